#pragma once

#include "ess/chart.hpp"
#include "ess/serialize.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <regex>

namespace ess {

/// "aMin..aMax,bMin..bMax"
inline DegreeWindow parse_window(const std::string& s, std::int64_t maxfil)
{
    static const std::regex re(R"(^\s*(-?\d+)\.\.(-?\d+)\s*,\s*(-?\d+)\.\.(-?\d+)\s*$)");
    std::smatch m;
    if (!std::regex_match(s, m, re))
        throw std::invalid_argument("bad --window '" + s + "' (expected aMin..aMax,bMin..bMax)");
    return DegreeWindow(std::stoll(m[1]), std::stoll(m[2]), std::stoll(m[3]), std::stoll(m[4]), maxfil);
}

/// The page with the largest index not above r; "inf" is the last page.
inline const Page& select_page(const SpectralSequence& ss, const std::string& page)
{
    if (page == "inf")
        return ss.e_infinity();
    const int r = std::stoi(page);
    const Page* best = &ss.pages.front();
    for (const auto& p : ss.pages)
        if (p.index() <= r)
            best = &p;
    return *best;
}

struct CliOptions {
    std::string space = "BC2Sigma2";
    std::string window = "-6..6,-6..6";
    std::int64_t maxfil = 6;
    std::string page = "inf";
    std::string format = "text";
    std::string cell_range = "dim";
    std::string out;
    std::string display = "default";
    std::string theory = "HZ";
    std::int64_t n = 1;
    std::optional<std::int64_t> k;
    std::optional<std::int64_t> table;
};

namespace cli_detail {

struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

inline void emit(const CliOptions& o, const std::string& text, std::ostream& out)
{
    if (o.out.empty()) {
        out << text;
        return;
    }
    std::ofstream f(o.out, std::ios::binary);
    if (!f)
        throw ComputationError("cannot write " + o.out);
    f << text;
}

inline CellRange cell_range(const CliOptions& o) { return o.cell_range == "paper" ? CellRange::Paper : CellRange::Dim; }

inline Region region(const CliOptions& o)
{
    try {
        return Region(parse_window(o.window, o.maxfil));
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline SpaceSpec space(const CliOptions& o)
{
    try {
        return SpaceSpec::parse(o.space, cell_range(o));
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

inline int page_command(const std::string& cmd, const CliOptions& o, std::ostream& out)
{
    const Region rg = region(o);
    const SpaceSpec sp = space(o);
    SpectralSequence ss;
    if (cmd == "hzss")
        ss = hzss(sp, rg);
    else if (cmd == "hzss-coh")
        ss = hzss_coh(sp, rg);
    else if (cmd == "aslice-kr")
        ss = aslicess_kR(sp, rg);
    else if (cmd == "slice-kr")
        ss = slicess_kR(rg);
    else
        ss = aslicess_kR_phi(sp, rg);
    const Page& p = select_page(ss, o.page);
    const bool inf = o.page == "inf" || &p == &ss.e_infinity();
    if (o.format == "svg") {
        ChartSpec spec;
        spec.title = ss.name + " " + ss.space.name() + " E" + (inf ? std::string("inf") : std::to_string(p.index()));
        spec.display = o.display == "adams" ? Display::Adams : Display::Default;
        emit(o, render_chart(p, spec), out);
        return 0;
    }
    PageDump d = dump_page(ss, p, inf);
    if (o.format == "json")
        emit(o, dump_json(to_json(d)), out);
    else if (o.format == "tsv")
        emit(o, to_tsv(d), out);
    else
        emit(o, to_text(d), out);
    return 0;
}

inline int kr_order_command(const CliOptions& o, std::ostream& out)
{
    KROrder k = kr_order(o.n, cell_range(o));
    if (o.format == "json")
        emit(o, dump_json(to_json(k)), out);
    else {
        std::ostringstream os;
        os << "KR^0(P(" << k.n << "rho)_+), cells " << to_string(k.range) << ", probe degree " << k.probe << "\n";
        for (const auto& [f, nf] : k.graded)
            os << "  filtration " << f << ": " << nf << "\n";
        os << "Z/2 summands: " << k.torsion_summands << ", free rank " << k.free_rank << "\n";
        os << "resolved: " << k.resolved() << "\n";
        if (!k.diagnostic.empty())
            os << "diagnostic: " << k.diagnostic << "\n";
        emit(o, os.str(), out);
    }
    return k.ok() ? 0 : 1;
}

inline int ring_command(const CliOptions& o, std::ostream& out)
{
    Theory th;
    try {
        th = parse_theory(o.theory);
    }
    catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    const Region rg = region(o);
    RingTable t = ring_structure(th, space(o), rg);
    if (o.format == "json")
        emit(o, dump_json(to_json(t, rg)), out);
    else if (o.format == "tsv")
        emit(o, to_tsv(t), out);
    else {
        std::ostringstream os;
        os << to_string(th) << " ring on " << t.space.name() << ": " << t.generators << " generators, " << t.pairs
           << " pairs, " << t.violations << " violations, " << t.associativity_defects << " non-associative triples\n";
        for (const auto& p : t.products)
            os << "  (" << p.left_label << ")·(" << p.right_label << ") = " << (p.zero ? "0" : join(p.labels, " + "))
               << (p.flags.empty() ? "" : "  [" + join(p.flags, ",") + "]") << "\n";
        for (const auto& e : t.examples)
            os << "note: " << e << "\n";
        emit(o, os.str(), out);
    }
    return t.violations == 0 ? 0 : 1;
}

inline int immersion_command(const CliOptions& o, std::ostream& out)
{
    std::vector<ImmersionReport> rows;
    const std::int64_t first = o.table ? 1 : o.n;
    const std::int64_t last = o.table ? *o.table : o.n;
    if (first < 1)
        throw UsageError("--n must be at least 1");
    for (std::int64_t n = first; n <= last; ++n)
        rows.push_back(immersion_report(n));
    if (o.format == "json") {
        Json arr = Json::array();
        for (const auto& r : rows)
            arr.push_back(to_json(r));
        emit(o, dump_json(o.table ? Json{{"schema", "ess-immersion/1"}, {"rows", arr}} : arr.at(0)), out);
    }
    else {
        std::ostringstream os;
        char buf[160];
        std::snprintf(buf, sizeof buf, "%4s %10s %12s %12s %14s %s\n", "n", "phi(2n-1)", "target", "crude", "KO_C2 order",
                      "cancellation");
        os << buf;
        for (const auto& r : rows) {
            std::snprintf(buf, sizeof buf, "%4lld %10lld %12s %12s %14s %s\n", static_cast<long long>(r.n),
                          static_cast<long long>(r.phi_2n_minus_1), (r.immersion_target.str() + "rho").c_str(),
                          (r.crude_target.str() + "rho").c_str(),
                          (r.koc2_torsion_lower.str() + ".." + r.koc2_torsion_upper.str()).c_str(),
                          r.cancellation.ok() ? "ok" : "fails");
            os << buf;
        }
        emit(o, os.str(), out);
    }
    bool ok = true;
    for (const auto& r : rows)
        ok = ok && r.cancellation.ok();
    return ok ? 0 : 1;
}

inline int james_command(const CliOptions& o, std::ostream& out)
{
    if (o.n < 1)
        throw UsageError("--n must be at least 1");
    if (!o.k) {
        const std::int64_t phi = james_phi(o.n);
        emit(o, o.format == "json" ? dump_json(Json{{"n", o.n}, {"phi", phi}}) : std::to_string(phi) + "\n", out);
        return 0;
    }
    if (o.n <= 1)
        throw ComputationError("james periodicity needs n > 1");
    Periodicity p = james_periodicity(o.n, *o.k);
    if (o.format == "json")
        emit(o,
             dump_json(Json{{"n", o.n},
                            {"k", *o.k},
                            {"shift_rho", integer_json(p.shift)},
                            {"source", p.source.label()},
                            {"target", p.target.label()}}),
             out);
    else
        emit(o, "Sigma^{" + p.shift.str() + "rho} " + p.source.label() + " ~ " + p.target.label() + "\n", out);
    return 0;
}

inline int oracle_command(const CliOptions& o, std::ostream& out)
{
    const Region rg = region(o);
    const GradedRing hz(RingKind::HZ);
    std::size_t checked = 0, unsupported = 0;
    std::vector<std::string> bad;
    rg.window.for_each([&](const RODegree& d) {
        auto r = chain_oracle_HZ(d);
        if (!r.supported) {
            ++unsupported;
            return;
        }
        ++checked;
        if (r.group.normal_form() != hz.group_at(d).normal_form())
            bad.push_back(to_string(d) + ": table " + describe(hz.group_at(d).normal_form()) + ", oracle " +
                          describe(r.group.normal_form()));
    });
    if (o.format == "json")
        emit(o, dump_json(Json{{"checked", checked}, {"unsupported", unsupported}, {"mismatches", bad}}), out);
    else {
        std::ostringstream os;
        os << "checked " << checked << " degrees, " << unsupported << " unsupported, " << bad.size() << " mismatches\n";
        for (const auto& b : bad)
            os << "  " << b << "\n";
        emit(o, os.str(), out);
    }
    return bad.empty() ? 0 : 1;
}

}  // namespace cli_detail

/// Runs the command line (args without the program name). 0 success, 1 computation
/// diagnostic, 2 usage error.
inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    using namespace cli_detail;
    CLI::App app{"Equivariant spectral sequence calculator", "ess"};
    app.require_subcommand(1);
    CliOptions o;
    const std::vector<std::string> formats{"json", "tsv", "svg", "text"};

    auto page_opts = [&](CLI::App* c, bool with_space) {
        if (with_space)
            c->add_option("--space", o.space, "S0, BC2Sigma2 or P<n>");
        c->add_option("--window", o.window, "aMin..aMax,bMin..bMax");
        c->add_option("--maxfil", o.maxfil, "largest filtration")->check(CLI::NonNegativeNumber);
        c->add_option("--page", o.page, "1, 2, 3, 4 or inf")->check(CLI::IsMember({"1", "2", "3", "4", "inf"}));
        c->add_option("--format", o.format)->check(CLI::IsMember(formats));
        c->add_option("--cell-range", o.cell_range)->check(CLI::IsMember({"paper", "dim"}));
        c->add_option("--out", o.out, "output file (default stdout)");
        c->add_option("--display", o.display)->check(CLI::IsMember({"default", "adams"}));
    };
    std::map<std::string, CLI::App*> subs;
    for (const char* name : {"hzss", "hzss-coh", "aslice-kr", "slice-kr", "aslice-kr-phi"}) {
        subs[name] = app.add_subcommand(name, std::string("page of the ") + name + " spectral sequence");
        page_opts(subs[name], std::string(name) != "slice-kr");
    }
    auto* kro = app.add_subcommand("kr-order", "K R^0 of P(n rho) from the periodic probe");
    kro->add_option("--n", o.n)->required();
    kro->add_option("--cell-range", o.cell_range)->check(CLI::IsMember({"paper", "dim"}));
    kro->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    kro->add_option("--out", o.out);
    subs["kr-order"] = kro;

    auto* ring = app.add_subcommand("ring", "products of E-infinity generators");
    ring->add_option("--theory", o.theory, "HF2, HZ or kR");
    ring->add_option("--space", o.space);
    ring->add_option("--window", o.window);
    ring->add_option("--maxfil", o.maxfil)->check(CLI::NonNegativeNumber);
    ring->add_option("--cell-range", o.cell_range)->check(CLI::IsMember({"paper", "dim"}));
    ring->add_option("--format", o.format)->check(CLI::IsMember({"json", "tsv", "text"}));
    ring->add_option("--out", o.out);
    subs["ring"] = ring;

    auto* imm = app.add_subcommand("immersion", "immersion targets and cancellation checks");
    imm->add_option("--n", o.n);
    imm->add_option("--table", o.table, "all n up to this value");
    imm->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    imm->add_option("--out", o.out);
    subs["immersion"] = imm;

    auto* james = app.add_subcommand("james", "James function, or periodicity with --k");
    james->add_option("--n", o.n)->required();
    james->add_option("--k", o.k);
    james->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    james->add_option("--out", o.out);
    subs["james"] = james;

    auto* oracle = app.add_subcommand("oracle-check", "coefficient table against the cellular chain oracle");
    oracle->add_option("--window", o.window);
    oracle->add_option("--format", o.format)->check(CLI::IsMember({"json", "text"}));
    oracle->add_option("--out", o.out);
    subs["oracle-check"] = oracle;

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    }
    catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n" << app.help();
        return 2;
    }

    std::string cmd;
    for (const auto& [name, sub] : subs)
        if (sub->parsed())
            cmd = name;
    try {
        if (cmd == "kr-order")
            return kr_order_command(o, out);
        if (cmd == "ring")
            return ring_command(o, out);
        if (cmd == "immersion")
            return immersion_command(o, out);
        if (cmd == "james")
            return james_command(o, out);
        if (cmd == "oracle-check")
            return oracle_command(o, out);
        if (o.format == "svg" && cmd.empty())
            throw UsageError("no subcommand");
        return page_command(cmd, o, out);
    }
    catch (const UsageError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
}

}  // namespace ess
