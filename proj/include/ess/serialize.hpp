#pragma once

#include "ess/immersion.hpp"
#include "ess/instances.hpp"

#include <json.hpp>

#include <sstream>

namespace ess {

using Json = nlohmann::ordered_json;

/// Integers go out as JSON numbers when they fit in 64 bits, otherwise as decimal strings.
inline Json integer_json(const Integer& x)
{
    if (x >= std::numeric_limits<std::int64_t>::min() && x <= std::numeric_limits<std::int64_t>::max())
        return static_cast<std::int64_t>(x);
    return x.str();
}

inline Integer integer_from(const Json& j)
{
    if (j.is_string())
        return Integer(j.get<std::string>());
    return Integer(j.get<std::int64_t>());
}

/// Plain data behind the ess-page/1 schema, so that load and dump are exact inverses.
struct PageDump {
    struct Differential {
        SpotKey target;
        std::vector<std::vector<Integer>> matrix;  // rows follow the target's generators
    };
    struct Spot {
        SpotKey key;
        bool known = true;
        std::vector<Integer> invariant_factors;
        std::size_t free_rank = 0;
        std::vector<std::string> basis;
        std::vector<std::string> generators;
        std::optional<Differential> differential;
    };
    std::string instance;
    std::string space;
    std::string cell_range;
    int page = 1;
    bool infinity = false;
    DegreeWindow window;
    std::int64_t fil_min = 0, fil_max = 0;
    std::vector<Spot> spots;
};

inline std::string to_string(CellRange r) { return r == CellRange::Paper ? "paper" : "dim"; }

/// Every nonzero or undetermined spot of the page, with generator names and, when the page
/// carries a differential, its matrix on normal-form generators.
inline PageDump dump_page(const SpectralSequence& ss, const Page& p, bool infinity)
{
    PageDump d;
    d.instance = ss.name;
    d.space = ss.space.name();
    d.cell_range = to_string(ss.space.range);
    d.page = p.index();
    d.infinity = infinity;
    d.window = p.region().window;
    d.fil_min = p.region().fil_min;
    d.fil_max = p.region().fil_max;
    for (const auto& [k, e] : p.entries()) {
        if (e.known && e.is_zero())
            continue;
        PageDump::Spot s;
        s.key = k;
        s.known = e.known;
        s.invariant_factors = e.normal_form().torsion;
        s.free_rank = e.normal_form().free_rank;
        for (const auto& t : e.basis)
            s.basis.push_back(p.model().label(t));
        s.generators = generator_labels(p.model(), e);
        if (p.differential() && !e.is_zero()) {
            if (auto m = induced_differential(p, k)) {
                PageDump::Differential diff;
                diff.target = shifted(k, p.differential()->filtration_shift);
                bool nonzero = false;
                for (std::size_t i = 0; i < m->rows(); ++i) {
                    std::vector<Integer> row;
                    for (std::size_t j = 0; j < m->cols(); ++j) {
                        row.push_back((*m)(i, j));
                        nonzero = nonzero || (*m)(i, j) != 0;
                    }
                    diff.matrix.push_back(std::move(row));
                }
                if (nonzero)
                    s.differential = std::move(diff);
            }
        }
        d.spots.push_back(std::move(s));
    }
    return d;
}

inline Json spot_key_json(const SpotKey& k) { return Json{{"filtration", k.filtration}, {"degree", {k.degree.a, k.degree.b}}}; }

inline SpotKey spot_key_from(const Json& j)
{
    return {j.at("filtration").get<std::int64_t>(), RODegree(j.at("degree").at(0).get<std::int64_t>(),
                                                             j.at("degree").at(1).get<std::int64_t>())};
}

inline Json to_json(const PageDump& d)
{
    Json spots = Json::array();
    for (const auto& s : d.spots) {
        Json factors = Json::array();
        for (const auto& x : s.invariant_factors)
            factors.push_back(integer_json(x));
        Json j{{"filtration", s.key.filtration},
               {"degree", {s.key.degree.a, s.key.degree.b}},
               {"known", s.known},
               {"invariant_factors", factors},
               {"free_rank", s.free_rank},
               {"basis", s.basis},
               {"generators", s.generators}};
        if (s.differential) {
            Json rows = Json::array();
            for (const auto& r : s.differential->matrix) {
                Json row = Json::array();
                for (const auto& x : r)
                    row.push_back(integer_json(x));
                rows.push_back(row);
            }
            j["differential"] = Json{{"target", spot_key_json(s.differential->target)}, {"matrix", rows}};
        }
        else
            j["differential"] = nullptr;
        spots.push_back(std::move(j));
    }
    return Json{{"schema", "ess-page/1"},
                {"instance", d.instance},
                {"space", d.space},
                {"cell_range", d.cell_range},
                {"page", d.infinity ? Json("inf") : Json(d.page)},
                {"page_index", d.page},
                {"window", {{"a", {d.window.a_min, d.window.a_max}}, {"b", {d.window.b_min, d.window.b_max}}}},
                {"filtration", {d.fil_min, d.fil_max}},
                {"entries", spots}};
}

inline PageDump page_dump_from(const Json& j)
{
    if (j.value("schema", "") != "ess-page/1")
        throw std::invalid_argument("not an ess-page/1 document");
    PageDump d;
    d.instance = j.at("instance").get<std::string>();
    d.space = j.at("space").get<std::string>();
    d.cell_range = j.at("cell_range").get<std::string>();
    d.page = j.at("page_index").get<int>();
    d.infinity = j.at("page").is_string();
    const Json& w = j.at("window");
    d.window = DegreeWindow(w.at("a").at(0).get<std::int64_t>(), w.at("a").at(1).get<std::int64_t>(),
                            w.at("b").at(0).get<std::int64_t>(), w.at("b").at(1).get<std::int64_t>(),
                            std::max<std::int64_t>(j.at("filtration").at(1).get<std::int64_t>(), 0));
    d.fil_min = j.at("filtration").at(0).get<std::int64_t>();
    d.fil_max = j.at("filtration").at(1).get<std::int64_t>();
    for (const auto& e : j.at("entries")) {
        PageDump::Spot s;
        s.key = spot_key_from(e);
        s.known = e.at("known").get<bool>();
        for (const auto& x : e.at("invariant_factors"))
            s.invariant_factors.push_back(integer_from(x));
        s.free_rank = e.at("free_rank").get<std::size_t>();
        s.basis = e.at("basis").get<std::vector<std::string>>();
        s.generators = e.at("generators").get<std::vector<std::string>>();
        if (!e.at("differential").is_null()) {
            PageDump::Differential diff;
            diff.target = spot_key_from(e.at("differential").at("target"));
            for (const auto& r : e.at("differential").at("matrix")) {
                std::vector<Integer> row;
                for (const auto& x : r)
                    row.push_back(integer_from(x));
                diff.matrix.push_back(std::move(row));
            }
            s.differential = std::move(diff);
        }
        d.spots.push_back(std::move(s));
    }
    return d;
}

inline std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

inline std::string group_string(const std::vector<Integer>& torsion, std::size_t free_rank)
{
    return describe(NormalForm{torsion, free_rank});
}

inline std::string join(const std::vector<std::string>& xs, const std::string& sep)
{
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        out += (i ? sep : "") + xs[i];
    return out;
}

inline std::string to_tsv(const PageDump& d)
{
    std::ostringstream os;
    os << "filtration\ta\tb\tknown\tgroup\tgenerators\tdifferential_target\n";
    for (const auto& s : d.spots) {
        os << s.key.filtration << '\t' << s.key.degree.a << '\t' << s.key.degree.b << '\t' << (s.known ? "yes" : "no")
           << '\t' << group_string(s.invariant_factors, s.free_rank) << '\t' << join(s.generators, "; ") << '\t'
           << (s.differential ? to_string(s.differential->target) : "") << '\n';
    }
    return os.str();
}

inline std::string to_text(const PageDump& d)
{
    std::ostringstream os;
    os << d.instance << " " << d.space << " (cells: " << d.cell_range << ") E" << (d.infinity ? "inf" : std::to_string(d.page))
       << ", window a " << d.window.a_min << ".." << d.window.a_max << ", b " << d.window.b_min << ".." << d.window.b_max
       << ", filtration " << d.fil_min << ".." << d.fil_max << "\n";
    for (const auto& s : d.spots) {
        os << "  " << to_string(s.key) << "  " << (s.known ? group_string(s.invariant_factors, s.free_rank) : "unknown");
        if (!s.generators.empty())
            os << "  <" << join(s.generators, ", ") << ">";
        if (s.differential)
            os << "  d -> " << to_string(s.differential->target);
        os << "\n";
    }
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// ess-ring/1

inline Json to_json(const RingTable& t, const Region& region)
{
    Json products = Json::array();
    for (const auto& p : t.products)
        products.push_back(Json{{"left", p.left_label},
                                {"left_spot", spot_key_json(p.left.spot)},
                                {"right", p.right_label},
                                {"right_spot", spot_key_json(p.right.spot)},
                                {"spot", spot_key_json(p.spot)},
                                {"product", p.zero ? Json::array() : Json(p.labels)},
                                {"rule", p.rule},
                                {"flags", p.flags}});
    return Json{{"schema", "ess-ring/1"},
                {"theory", to_string(t.theory)},
                {"space", t.space.name()},
                {"cell_range", to_string(t.space.range)},
                {"window",
                 {{"a", {region.window.a_min, region.window.a_max}}, {"b", {region.window.b_min, region.window.b_max}}}},
                {"filtration", {region.fil_min, region.fil_max}},
                {"generators", t.generators},
                {"pairs", t.pairs},
                {"violations", t.violations},
                {"delta_zero_checked", t.delta_zero},
                {"sigma_zero_checked", t.sigma_zero},
                {"associativity_defects", t.associativity_defects},
                {"notes", t.examples},
                {"products", products}};
}

inline std::string to_tsv(const RingTable& t)
{
    std::ostringstream os;
    os << "left\tleft_spot\tright\tright_spot\tproduct\tspot\trule\tflags\n";
    for (const auto& p : t.products)
        os << p.left_label << '\t' << to_string(p.left.spot) << '\t' << p.right_label << '\t' << to_string(p.right.spot)
           << '\t' << (p.zero ? "0" : join(p.labels, " + ")) << '\t' << to_string(p.spot) << '\t' << p.rule << '\t'
           << join(p.flags, ",") << '\n';
    return os.str();
}

// ---------------------------------------------------------------------------------------------
// Other reports

inline Json to_json(const KROrder& k)
{
    Json graded = Json::array();
    for (const auto& [f, nf] : k.graded) {
        Json factors = Json::array();
        for (const auto& x : nf.torsion)
            factors.push_back(integer_json(x));
        graded.push_back(Json{{"filtration", f}, {"invariant_factors", factors}, {"free_rank", nf.free_rank}});
    }
    return Json{{"schema", "ess-kr-order/1"},
                {"n", k.n},
                {"cell_range", to_string(k.range)},
                {"probe_degree", {k.probe.a, k.probe.b}},
                {"associated_graded", graded},
                {"z2_summands", k.torsion_summands},
                {"free_rank", k.free_rank},
                {"all_known", k.all_known},
                {"resolved", k.resolved()},
                {"ok", k.ok()},
                {"diagnostic", k.diagnostic}};
}

inline Json to_json(const ImmersionReport& r)
{
    return Json{{"n", r.n},
                {"phi_2n_minus_1", r.phi_2n_minus_1},
                {"kr_torsion_order", integer_json(r.kr_torsion_order)},
                {"koc2_torsion_upper", integer_json(r.koc2_torsion_upper)},
                {"koc2_torsion_lower", integer_json(r.koc2_torsion_lower)},
                {"immersion_target_rho", integer_json(r.immersion_target)},
                {"crude_target_rho", integer_json(r.crude_target)},
                {"cancellation_ok", r.cancellation.ok()},
                {"cancellation",
                 {{"rank", r.cancellation.total}, {"rank_plus", r.cancellation.plus}, {"rank_minus", r.cancellation.minus}}},
                {"cancellation_detail", r.cancellation.detail},
                {"periodicity_exponent", integer_json(r.periodicity_exponent)}};
}

}  // namespace ess
