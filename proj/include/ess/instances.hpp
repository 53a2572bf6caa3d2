#pragma once

#include "ess/derived_modules.hpp"
#include "ess/parallel.hpp"
#include "ess/sseq.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace ess {

enum class SpaceKind { S0, BC2Sigma2, Pn };

/// Which cells model ℙ(nρ): m ∈ [0, n-1] (dimension count) or m ∈ [0, n] (printed range).
enum class CellRange { Dim, Paper };

struct SpaceSpec {
    SpaceKind kind = SpaceKind::BC2Sigma2;
    std::int64_t n = 0;
    CellRange range = CellRange::Dim;

    static SpaceSpec parse(const std::string& s, CellRange range = CellRange::Dim)
    {
        if (s == "S0")
            return {SpaceKind::S0, 0, range};
        if (s == "BC2Sigma2")
            return {SpaceKind::BC2Sigma2, 0, range};
        if (s.size() > 1 && s[0] == 'P' &&
            std::all_of(s.begin() + 1, s.end(), [](unsigned char c) { return std::isdigit(c); }))
            return {SpaceKind::Pn, std::stoll(s.substr(1)), range};
        throw std::invalid_argument("unknown space '" + s + "' (expected S0, BC2Sigma2 or P<n>)");
    }

    std::string name() const
    {
        switch (kind) {
        case SpaceKind::S0: return "S0";
        case SpaceKind::BC2Sigma2: return "BC2Sigma2";
        case SpaceKind::Pn: return "P" + std::to_string(n);
        }
        return "?";
    }

    /// Largest m with cells b_{mρ}, b_{mρ+σ}; -1 for no cells. Infinite spaces are cut at cap.
    std::int64_t top(std::int64_t cap) const
    {
        switch (kind) {
        case SpaceKind::S0: return 0;
        case SpaceKind::BC2Sigma2: return cap;
        case SpaceKind::Pn: return range == CellRange::Paper ? n : n - 1;
        }
        return -1;
    }
};

inline std::string rho_label(std::int64_t m, bool sigma)
{
    if (m == 0)
        return sigma ? "b_sigma" : "b0";
    std::string r = m == 1 ? "rho" : std::to_string(m) + "rho";
    if (sigma)
        return "b_{" + r + "+sigma}";
    return m == 1 ? "b_rho" : "b_{" + r + "}";
}

/// Cell of ℙ(∞ρ) with its ρ-multiple and whether it carries the extra σ.
struct CellInfo {
    std::int64_t m = 0;
    bool sigma = false;
};

/// Cells b_{mρ}, b_{mρ+σ} in the order b0, b_σ, b_ρ, b_{ρ+σ}, ... so that index = underlying dimension.
/// Homological degrees; cohomological cells sit at the negated degrees.
inline CellBasis space_cells(const SpaceSpec& space, std::int64_t cap, bool cohomology = false)
{
    CellBasis cells;
    const std::int64_t top = space.top(cap);
    for (std::int64_t m = 0; m <= top; ++m)
        for (bool s : {false, true}) {
            if (space.kind == SpaceKind::S0 && s)
                continue;
            RODegree d = m * RODegree::rho() + (s ? RODegree::sigma() : RODegree::zero());
            std::string label = rho_label(m, s);
            if (cohomology) {
                label.replace(0, 1, "b^");
                label.erase(2, label[2] == '_' ? 1 : 0);
                d = -d;
            }
            cells.push_back({label, d, m});
        }
    return cells;
}

inline CellInfo cell_info(std::size_t index) { return {static_cast<std::int64_t>(index / 2), index % 2 == 1}; }

inline std::int64_t window_extent(const DegreeWindow& w)
{
    return std::max({std::abs(w.a_min), std::abs(w.a_max), std::abs(w.b_min), std::abs(w.b_max)});
}

/// Pages of one spectral sequence, in order; the last one is E∞ within the window.
struct SpectralSequence {
    std::string name;
    SpaceSpec space;
    std::vector<Page> pages;

    const Page& page(int r) const
    {
        for (const auto& p : pages)
            if (p.index() == r)
                return p;
        throw std::out_of_range(name + ": no page E" + std::to_string(r));
    }
    const Page& e_infinity() const { return pages.back(); }
};

// ---------------------------------------------------------------------------------------------
// H𝐙̲-homology (cell filtration)

inline DifferentialRule hzss_d1()
{
    // d₁(α b_{mρ}) = 2α b_{(m-1)ρ+σ}: cell index 2m → 2m-1.
    return {"d1", -1, [](const Term& t) {
                Chain c;
                if (t.cell % 2 == 0 && t.cell > 0)
                    add_to(c, Term{t.coeff, t.cell - 1, t.vbar}, 2);
                return c;
            }};
}

inline DifferentialRule hzss_coh_d1(std::size_t cells)
{
    // d₁(α b^{mρ+σ}) = 2α b^{(m+1)ρ}: cell index 2m+1 → 2m+2. The top σ-cell of a finite ℙ(nρ) is a cocycle.
    return {"d1", 1, [cells](const Term& t) {
                Chain c;
                if (t.cell % 2 == 1 && t.cell + 1 < cells)
                    add_to(c, Term{t.coeff, t.cell + 1, t.vbar}, 2);
                return c;
            }};
}

/// Cell-filtered spectral sequence for a coefficient ring. Cohomology cells are homologically
/// graded, so H^V sits at degree -V.
inline SpectralSequence cell_ss(RingKind ring, const SpaceSpec& space, const Region& region, bool cohomology)
{
    const std::int64_t cap = std::max<std::int64_t>(region.fil_max + 2, 1);
    auto model = std::make_shared<ChainModel>(GradedRing(ring), space_cells(space, cap, cohomology), FiltrationMode::Cell);
    SpectralSequence ss{std::string(cohomology ? "hzss-coh" : "hzss") + (ring == RingKind::HZ ? "" : "/" + to_string(ring)),
                        space, {}};
    Page e1 = install(build_E1(model, region), cohomology ? hzss_coh_d1(model->cells().size()) : hzss_d1());
    ss.pages.push_back(e1);
    ss.pages.push_back(turn_page(e1));
    return ss;
}

inline SpectralSequence hzss(const SpaceSpec& space, const Region& region)
{
    return cell_ss(RingKind::HZ, space, region, false);
}

inline SpectralSequence hzss_coh(const SpaceSpec& space, const Region& region)
{
    return cell_ss(RingKind::HZ, space, region, true);
}

/// The H𝔽̲₂ spectral sequence of the same filtration (d₁ = 2 = 0).
inline SpectralSequence hf2ss(const SpaceSpec& space, const Region& region)
{
    return cell_ss(RingKind::HF2, space, region, false);
}

/// The additive answer H𝐙̲_★⟨b₀⟩ ⊕ C⟨b_{mρ+σ}⟩ ⊕ K⟨b_{mρ}⟩_{m≥1} at a spot of the cell filtration.
/// A top σ-cell of a finite space has nothing hitting it and keeps all of H𝐙̲_★.
inline NormalForm expected_hzss(const SpaceSpec& space, const SpotKey& k, std::int64_t cap)
{
    const DerivedModules dm;
    const std::int64_t m = k.filtration;
    const std::int64_t top = space.top(cap);
    std::vector<PresentedGroup> parts;
    if (m < 0 || m > top)
        return {};
    const RODegree w = k.degree - m * RODegree::rho();
    parts.push_back(m == 0 ? dm.ring().group_at(w) : dm.K(w));
    if (space.kind != SpaceKind::S0) {
        const RODegree ws = w - RODegree::sigma();
        const bool free_top = space.kind == SpaceKind::Pn && m == top;
        parts.push_back(free_top ? dm.ring().group_at(ws) : dm.C(ws));
    }
    NormalForm nf;
    for (const auto& g : parts) {
        const auto& x = g.normal_form();
        nf.free_rank += x.free_rank;
        nf.torsion.insert(nf.torsion.end(), x.torsion.begin(), x.torsion.end());
    }
    std::sort(nf.torsion.begin(), nf.torsion.end());
    return nf;
}

/// Cohomological answer H𝐙̲^★⟨b⁰⟩ ⊕ K⟨b^{mρ+σ}⟩ ⊕ C⟨b^{mρ}⟩_{m≥1}, at homological degree k.degree.
inline NormalForm expected_hzss_coh(const SpaceSpec& space, const SpotKey& k, std::int64_t cap)
{
    const DerivedModules dm;
    const std::int64_t m = k.filtration;
    const std::int64_t top = space.top(cap);
    if (m < 0 || m > top)
        return {};
    const RODegree w = k.degree + m * RODegree::rho();
    std::vector<PresentedGroup> parts{m == 0 ? dm.ring().group_at(w) : dm.C(w)};
    if (space.kind == SpaceKind::Pn && m == top)
        parts.push_back(dm.ring().group_at(w + RODegree::sigma()));
    else if (space.kind != SpaceKind::S0)
        parts.push_back(dm.K(w + RODegree::sigma()));
    NormalForm nf;
    for (const auto& g : parts) {
        nf.free_rank += g.normal_form().free_rank;
        nf.torsion.insert(nf.torsion.end(), g.normal_form().torsion.begin(), g.normal_form().torsion.end());
    }
    std::sort(nf.torsion.begin(), nf.torsion.end());
    return nf;
}

// ---------------------------------------------------------------------------------------------
// Augmented slice spectral sequences. Filtration is 2·(v̄₁-power). The cell differential is run
// first as a d₁ of filtration shift 0, which turns E₁ into H𝐙̲_★(Y)[v̄₁] = E₂. There is no d₂,
// then d₃ raises the v̄₁-power by one.

inline DifferentialRule slice_cell_d1()
{
    return {"d1", 0, [](const Term& t) {
                Chain c;
                if (t.cell % 2 == 0 && t.cell > 0)
                    add_to(c, Term{t.coeff, t.cell - 1, t.vbar}, 2);
                return c;
            }};
}

/// d₃(α b v̄^m) = d₃(α) b v̄^{m+1}; terms beyond the modelled v̄₁-range are dropped.
inline DifferentialRule slice_d3_rule(std::shared_ptr<const ChainModel> model)
{
    return {"d3", 2, [model](const Term& t) {
                Chain c;
                if (auto d = slice_d3(t.coeff)) {
                    Term r{d->second, t.cell, t.vbar + 1};
                    if (model->contains(r))
                        add_to(c, r, d->first);
                }
                return c;
            }};
}

struct SliceOptions {
    RingKind ring = RingKind::HZ;  // HZ for kR, HZ_phi for kR^Φ
    bool laurent = false;          // v̄₁ inverted (periodic probe)
    std::string name = "aslice-kr";
};

inline SpectralSequence slice_ss(const SpaceSpec& space, const Region& region, const SliceOptions& opt)
{
    const std::int64_t ext = window_extent(region.window);
    const std::int64_t vmax = region.fil_max / 2 + 2;
    const std::int64_t vmin = opt.laurent ? std::min<std::int64_t>(region.fil_min / 2 - 2, 0) : 0;
    const std::int64_t cap = ext + std::max<std::int64_t>(std::abs(vmin), vmax) + 3;
    auto model = std::make_shared<ChainModel>(GradedRing(opt.ring), space_cells(space, cap), FiltrationMode::Slice,
                                              vmin, vmax);
    SpectralSequence ss{opt.name, space, {}};
    Page e1 = install(build_E1(model, region), slice_cell_d1());
    ss.pages.push_back(e1);
    Page e2 = turn_page(e1);
    ss.pages.push_back(e2);
    Page e3 = install(turn_page(e2), slice_d3_rule(model));
    ss.pages.push_back(e3);
    ss.pages.push_back(turn_page(e3));
    return ss;
}

inline SpectralSequence aslicess_kR(const SpaceSpec& space, const Region& region)
{
    return slice_ss(space, region, {RingKind::HZ, false, "aslice-kr"});
}

inline SpectralSequence slicess_kR(const Region& region)
{
    return slice_ss({SpaceKind::S0, 0, CellRange::Dim}, region, {RingKind::HZ, false, "slice-kr"});
}

inline SpectralSequence aslicess_kR_phi(const SpaceSpec& space, const Region& region)
{
    return slice_ss(space, region, {RingKind::HZ_phi, false, "aslice-kr-phi"});
}

inline void append(NormalForm& nf, const NormalForm& x)
{
    nf.free_rank += x.free_rank;
    nf.torsion.insert(nf.torsion.end(), x.torsion.begin(), x.torsion.end());
}

/// D̄⟨b₀⟩ ⊕ C̄⟨b_{nρ+σ}⟩ ⊕ K̄⟨b_{nρ}⟩_{n≥1} at slice filtration 2m. For a finite space the top
/// σ-cell carries D̄ (nothing hits it with 2).
inline NormalForm expected_aslice_kR(const SpaceSpec& space, const SpotKey& k, std::int64_t cap, bool laurent = false)
{
    const DerivedModules dm;
    if (k.filtration % 2 != 0)
        return {};
    const std::int64_t m = k.filtration / 2;
    if (m < 0 && !laurent)
        return {};
    const std::int64_t mm = laurent ? 1 : m;  // with v̄₁ inverted every power is interior
    const RODegree w = k.degree - m * RODegree::rho();
    NormalForm nf;
    const std::int64_t top = space.top(cap);
    for (std::int64_t n = 0; n <= top; ++n) {
        const RODegree wr = w - n * RODegree::rho();
        append(nf, dm.bar(n == 0 ? ModuleKind::Dbar : ModuleKind::Kbar, wr, mm).normal_form());
        if (space.kind == SpaceKind::S0)
            continue;
        const bool free_top = space.kind == SpaceKind::Pn && n == top;
        append(nf, dm.bar(free_top ? ModuleKind::Dbar : ModuleKind::Cbar, wr - RODegree::sigma(), mm).normal_form());
    }
    std::sort(nf.torsion.begin(), nf.torsion.end());
    return nf;
}

/// k𝐑^Φ_★⟨b_{nρ}, b_{nρ+σ}⟩ in filtration 0, nothing above.
inline NormalForm expected_aslice_kR_phi(const SpaceSpec& space, const SpotKey& k, std::int64_t cap)
{
    if (k.filtration != 0)
        return {};
    const GradedRing krphi(RingKind::kR_phi);
    NormalForm nf;
    for (const auto& c : space_cells(space, cap))
        append(nf, krphi.group_at(k.degree - c.degree).normal_form());
    std::sort(nf.torsion.begin(), nf.torsion.end());
    return nf;
}

// ---------------------------------------------------------------------------------------------
// Comparison maps

/// ε: ASliceSS(Y) → SliceSS: b₀ ↦ b₀, every other cell ↦ 0.
inline Morphism augmentation()
{
    return {"epsilon", [](const Term& t) {
                Chain c;
                if (t.cell == 0)
                    add_to(c, t, 1);
                return c;
            },
            0, {}};
}

/// φ: a_σ-localization on coefficients (negative cone dies), cells and v̄₁ unchanged.
inline Morphism localization()
{
    return {"phi", [](const Term& t) {
                Chain c;
                if (auto m = localize(t.coeff))
                    add_to(c, Term{*m, t.cell, t.vbar}, 1);
                return c;
            },
            0, {}};
}

/// ψ: mod 2 reduction H𝐙̲ → H𝔽̲₂ on coefficients.
inline Morphism reduction()
{
    return {"psi", [](const Term& t) { return Chain{{Term{reduce_mod2(t.coeff), t.cell, t.vbar}, 1}}; }, 0, {}};
}

/// Compare every page of two sequences with matching indices.
inline CompareReport compare_sequences(const Morphism& f, const SpectralSequence& source,
                                       const SpectralSequence& target)
{
    CompareReport total;
    for (const auto& p : source.pages) {
        const Page* q = nullptr;
        for (const auto& x : target.pages)
            if (x.index() == p.index())
                q = &x;
        if (!q)
            continue;
        auto r = compare(f, p, *q);
        total.ok = total.ok && r.ok;
        total.checked += r.checked;
        total.skipped += r.skipped;
        for (auto& s : r.failures)
            if (total.failures.size() < 20)
                total.failures.push_back("E" + std::to_string(p.index()) + ": " + s);
    }
    return total;
}

}  // namespace ess

namespace ess {

// ---------------------------------------------------------------------------------------------
// Higher differentials

/// d_r changes the cell filtration by -r, and the slice filtration 2m by r - 1.
inline std::int64_t cell_shift(int r) { return -static_cast<std::int64_t>(r); }
inline std::int64_t slice_shift(int r) { return static_cast<std::int64_t>(r) - 1; }

/// Whether a list of normal-form coordinate vectors generates the group of an entry.
inline bool generates(const Entry& e, const std::vector<std::vector<Integer>>& coords)
{
    const NormalForm& nf = e.normal_form();
    const std::size_t n = nf.size();
    std::vector<Integer> orders;
    for (std::size_t i = 0; i < n; ++i)
        orders.push_back(e.group.normal_order(i));
    PresentedGroup g = PresentedGroup::diagonal(std::vector<std::string>(n, ""), orders);
    if (coords.empty())
        return g.is_zero();
    return PresentedGroup(std::vector<std::string>(n, ""), hconcat(g.relations(), from_columns(n, coords))).is_zero();
}

/// A map out of the target spot of a candidate d_r. If d_r(x) maps to zero under every applicable
/// detector and the detectors are jointly injective on the target, then d_r(x) = 0.
struct Detector {
    std::string name;
    ChainOperator apply;
    const Page* page = nullptr;   // nullptr: the page being checked
    SpotKey shift{0, RODegree::zero()};
    bool needs_quiet_image = false;   // the image of the source must itself carry no d_r
};

inline std::size_t normal_size(const Entry* e) { return e ? e->normal_form().size() : 0; }

inline std::vector<Integer> normal_orders(const Entry* e)
{
    std::vector<Integer> out;
    for (std::size_t i = 0; i < normal_size(e); ++i)
        out.push_back(e->group.normal_order(i));
    return out;
}

/// Whether ⊕ f_i from spot t of p into the given targets is injective; false if any image is unknown.
inline bool jointly_injective(const Page& p, const SpotKey& t,
                              const std::vector<std::tuple<const ChainOperator*, const Page*, SpotKey>>& maps)
{
    const Entry* e = p.find(t);
    if (!e || e->is_zero())
        return true;
    std::vector<Integer> tgt_orders;
    std::vector<Matrix> blocks;
    for (const auto& [f, q, k] : maps) {
        auto m = induced_operator(*f, p, t, *q, k);
        if (!m)
            return false;
        blocks.push_back(*m);
        auto o = normal_orders(q->find(k));
        tgt_orders.insert(tgt_orders.end(), o.begin(), o.end());
    }
    Matrix stacked(tgt_orders.size(), normal_size(e));
    std::size_t row = 0;
    for (const auto& b : blocks)
        for (std::size_t i = 0; i < b.rows(); ++i, ++row)
            for (std::size_t j = 0; j < b.cols(); ++j)
                stacked(row, j) = b(i, j);
    auto names = [](std::size_t n) { return std::vector<std::string>(n, ""); };
    auto src = normal_orders(e);
    GroupMap g(PresentedGroup::diagonal(names(src.size()), src), PresentedGroup::diagonal(names(tgt_orders.size()), tgt_orders),
               stacked);
    return kernel(g).is_zero();
}

/// Coordinates of a chain in the normal form of an entry; nullopt when it is not a cycle there.
inline std::optional<std::vector<Integer>> class_of(const Entry& e, const IntegerSolver& cycles, const Chain& c)
{
    auto v = to_vector(e.basis, c);
    if (!v)
        return std::nullopt;
    auto z = cycles.solve(*v);
    if (!z)
        return std::nullopt;
    return e.group.coordinates(*z);
}

/// Chain-level product of a coefficient-sequence chain (cell b₀) with a chain of the module sequence.
inline Chain module_product(const ChainModel& target, const Chain& x, const Chain& y)
{
    Chain out;
    for (const auto& [tx, cx] : x)
        for (const auto& [ty, cy] : y) {
            Product p = target.ring().multiply(tx.coeff, ty.coeff);
            if (p.is_zero())
                continue;
            Term t{p.monomial, ty.cell, tx.vbar + ty.vbar};
            if (target.contains(t))
                add_to(out, t, cx * cy * p.coefficient);
        }
    return out;
}

/// The cell product of ℙ(∞ρ): b₀ is the unit, b_{nρ+σ}·b_{mρ+σ} = 0,
/// b_{nρ}·b_{mρ} = (1-δ_n^m) b_{(n+m)ρ}, b_{nρ}·b_{mρ+σ} = b_{(n+m)ρ+σ}.
/// Returns the product cell index, or nullopt for zero.
inline std::optional<std::size_t> cell_product(std::size_t i, std::size_t j)
{
    if (i == 0)
        return j;
    if (j == 0)
        return i;
    const CellInfo x = cell_info(i), y = cell_info(j);
    if (x.sigma && y.sigma)
        return std::nullopt;
    if (!x.sigma && !y.sigma && x.m == y.m)
        return std::nullopt;
    return static_cast<std::size_t>(2 * (x.m + y.m) + (x.sigma || y.sigma ? 1 : 0));
}

/// Chain-level extension of the cell product, coefficients multiplied in the ring.
inline Chain space_product(const ChainModel& model, const Chain& x, const Chain& y)
{
    Chain out;
    for (const auto& [tx, cx] : x)
        for (const auto& [ty, cy] : y) {
            auto c = cell_product(tx.cell, ty.cell);
            if (!c || *c >= model.cells().size())
                continue;
            Product p = model.ring().multiply(tx.coeff, ty.coeff);
            if (p.is_zero())
                continue;
            Term t{p.monomial, *c, tx.vbar + ty.vbar};
            if (model.contains(t))
                add_to(out, t, cx * cy * p.coefficient);
        }
    return out;
}

/// Registered structural arguments for a collapse check.
struct CollapseArguments {
    std::vector<VanishingReason> base;            // spot-local reasons (hom-vanishing, ...)
    const Page* multipliers = nullptr;            // permanent coefficient classes acting on the page
    bool leibniz_space_product = false;           // products of two quiet classes under the cell product
    std::vector<Detector> detectors;
};

/// Certify that d_r vanishes for r in [r_min, r_max] on a page. Spot-local reasons run first; the
/// multiplicative ones (module generation, Leibniz with the cell product, detection through a
/// quiet image) are iterated to a fixed point. A spot is quiet for d_r if its group is zero, its
/// target is known to be zero, or it has been resolved.
inline VanishingReport certify_collapse(const Page& e, int r_min, int r_max,
                                        const std::function<std::int64_t(int)>& shift, const CollapseArguments& args)
{
    VanishingReport rep = exhaustive_vanishing_check(e, r_min, r_max, shift, args.base);
    const ChainModel& model = e.model();
    auto plus = [](const SpotKey& x, const SpotKey& y) { return SpotKey{x.filtration + y.filtration, x.degree + y.degree}; };
    auto minus = [](const SpotKey& x, const SpotKey& y) { return SpotKey{x.filtration - y.filtration, x.degree - y.degree}; };

    struct Generator {
        SpotKey spot;
        Chain chain;
    };
    auto generators_of = [](const Page& p, bool skip_unit) {
        std::vector<Generator> out;
        for (const auto& [k, en] : p.entries()) {
            if (!en.known || en.is_zero() || (skip_unit && k == SpotKey{0, RODegree::zero()}))
                continue;
            for (std::size_t i = 0; i < en.normal_form().size(); ++i)
                out.push_back({k, to_chain(en.basis, en.generator_chain(i))});
        }
        return out;
    };
    const std::vector<Generator> xs = args.multipliers ? generators_of(*args.multipliers, true) : std::vector<Generator>{};
    const std::vector<Generator> own = args.leibniz_space_product ? generators_of(e, true) : std::vector<Generator>{};

    for (int r = r_min; r <= r_max; ++r) {
        std::map<SpotKey, VanishingCandidate*> open;
        for (auto& c : rep.candidates)
            if (c.r == r && !c.resolved())
                open[c.source] = &c;
        if (open.empty())
            continue;
        auto quiet = [&](const SpotKey& k) {
            if (!e.known(k))
                return false;
            const Entry* en = e.find(k);
            if (!en || en->is_zero())
                return true;
            return !open.count(k) && e.known(shifted(k, shift(r)));
        };
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = open.begin(); it != open.end();) {
                const SpotKey s = it->first;
                const SpotKey t = shifted(s, shift(r));
                const Entry& en = *e.find(s);
                std::string why;

                if (!args.detectors.empty()) {
                    std::vector<std::tuple<const ChainOperator*, const Page*, SpotKey>> maps;
                    std::string names;
                    for (const auto& d : args.detectors) {
                        if (d.needs_quiet_image && !quiet(plus(s, d.shift)))
                            continue;
                        maps.emplace_back(&d.apply, d.page ? d.page : &e, plus(t, d.shift));
                        names += (names.empty() ? "" : " + ") + d.name;
                    }
                    if (!maps.empty() && jointly_injective(e, t, maps))
                        why = "detection: the target injects under " + names;
                }

                if (why.empty() && (!xs.empty() || !own.empty())) {
                    IntegerSolver solver(en.cycles);
                    std::vector<std::vector<Integer>> coords;
                    auto collect = [&](const Chain& c) {
                        if (auto v = class_of(en, solver, c))
                            coords.push_back(std::move(*v));
                    };
                    for (const auto& x : xs) {
                        const SpotKey ys = minus(s, x.spot);
                        const Entry* ye = e.find(ys);
                        if (!ye || ye->is_zero() || !quiet(ys))
                            continue;
                        for (std::size_t i = 0; i < ye->normal_form().size(); ++i)
                            collect(module_product(model, x.chain, to_chain(ye->basis, ye->generator_chain(i))));
                    }
                    for (const auto& y : own) {
                        if (y.spot == s || !quiet(y.spot))
                            continue;
                        const SpotKey zs = minus(s, y.spot);
                        const Entry* ze = e.find(zs);
                        if (!ze || ze->is_zero() || zs == SpotKey{0, RODegree::zero()} || !quiet(zs))
                            continue;
                        for (std::size_t i = 0; i < ze->normal_form().size(); ++i)
                            collect(space_product(model, y.chain, to_chain(ze->basis, ze->generator_chain(i))));
                    }
                    if (!coords.empty() && generates(en, coords))
                        why = "generated by products of classes without d_r";
                }
                if (!why.empty()) {
                    it->second->reason = why;
                    it = open.erase(it);
                    changed = true;
                }
                else
                    ++it;
            }
        }
    }
    rep.certified = rep.unresolved() == 0;
    return rep;
}

/// H𝐙̲-homology: d_r for r ≥ 2 on E₂.
inline VanishingReport hzss_vanishing_check(const SpectralSequence& hz, const SpectralSequence& hf2,
                                            const SpectralSequence& hz_s0, int r_max)
{
    CollapseArguments args;
    args.base = {hom_vanishing_reason()};
    args.multipliers = &hz_s0.e_infinity();
    args.leibniz_space_product = true;
    // H𝔽̲₂ has no differentials at all.
    args.detectors.push_back({"mod 2 reduction", reduction().apply, &hf2.e_infinity()});
    return certify_collapse(hz.e_infinity(), 2, r_max, cell_shift, args);
}

/// Augmented slice sequence: d_r for r ≥ 5 (odd; even r have no room) on E₄. s0 is SliceSS(kR),
/// whose own collapse must be certified first since its classes are used as permanent multipliers
/// and as the ε-detector.
inline VanishingReport slice_vanishing_check(const SpectralSequence& ss, const SpectralSequence* s0, int r_min,
                                             int r_max, const VanishingReport* s0_report = nullptr)
{
    CollapseArguments args;
    args.base = {hom_vanishing_reason()};
    if (s0 && (!s0_report || s0_report->certified)) {
        args.multipliers = &s0->e_infinity();
        args.leibniz_space_product = true;
        args.detectors.push_back({"augmentation", augmentation().apply, &s0->e_infinity()});
        args.detectors.push_back({"a_sigma", multiply_by(ss.e_infinity().model(), positive(0, 1)), nullptr,
                                  SpotKey{0, RODegree(0, -1)}, true});
    }
    return certify_collapse(ss.e_infinity(), r_min, r_max, slice_shift, args);
}

// ---------------------------------------------------------------------------------------------
// Underlying comparison

struct UnderlyingReport {
    std::size_t checked = 0;
    std::vector<std::string> mismatches;
    bool ok() const { return checked > 0 && mismatches.empty(); }
};

/// Restriction of a coefficient to the underlying ring ℤ: u_{2σ} ↦ 1, a_σ and the negative cone ↦ 0.
inline Integer underlying_restriction(const Monomial& m)
{
    return m.family == Family::Positive && m.a == 0 && m.e == 0 && m.v == 0 ? 1 : 0;
}

/// Project the installed d₁ of an H𝐙̲ cell sequence to underlying degrees and compare with the
/// classical chain complex of ℝP^∞ (or ℝP^{2n-1}): d(e_k) = (1 + (-1)^k) e_{k-1}.
inline UnderlyingReport underlying_comparison(const SpectralSequence& hz)
{
    UnderlyingReport rep;
    const Page& e1 = hz.page(1);
    const ChainModel& model = e1.model();
    const DifferentialRule rule = *e1.differential();
    for (const auto& [k, en] : e1.entries())
        for (const auto& t : en.basis) {
            const Integer r = underlying_restriction(t.coeff);
            if (r == 0)
                continue;
            const std::int64_t dim = static_cast<std::int64_t>(t.cell);
            std::map<std::int64_t, Integer> got;
            for (const auto& [img, c] : rule.apply(t)) {
                const Integer ri = underlying_restriction(img.coeff);
                if (ri != 0)
                    got[static_cast<std::int64_t>(img.cell)] += c * ri;
            }
            for (auto it = got.begin(); it != got.end();)
                it = it->second == 0 ? got.erase(it) : std::next(it);
            std::map<std::int64_t, Integer> want;
            if (dim > 0 && dim % 2 == 0)
                want[dim - 1] = 2;
            ++rep.checked;
            if (got != want && rep.mismatches.size() < 20)
                rep.mismatches.push_back("d1 on " + model.label(t) + " (underlying e_" + std::to_string(dim) + ")");
        }
    return rep;
}

// ---------------------------------------------------------------------------------------------
// K𝐑⁰(ℙ(nρ)₊) via the v̄₁-periodic probe

struct KROrder {
    std::int64_t n = 0;
    CellRange range = CellRange::Paper;
    RODegree probe;
    std::vector<std::pair<std::int64_t, NormalForm>> graded;  // nonzero filtrations of the probe column
    std::size_t torsion_summands = 0;                         // ℤ/2's
    std::size_t other_torsion = 0;
    std::int64_t free_rank = 0;
    bool all_known = true;
    Integer resolved_order = 1;                               // 2^{torsion_summands}
    std::string diagnostic;

    bool ok() const { return all_known && other_torsion == 0 && torsion_summands == static_cast<std::size_t>(n); }
    std::string resolved() const { return torsion_summands == 0 ? "0" : "Z/" + resolved_order.str(); }
};

/// Associated graded of the v̄₁-Laurent augmented slice sequence of ℙ(nρ) in degree nρ - 1, with
/// all ℤ/2's assembled into one cyclic group (the restriction to KU⁰(ℝP^{2n-1}) is an
/// isomorphism on the bottom summand, which forces the extensions).
inline KROrder kr_order(std::int64_t n, CellRange range = CellRange::Paper)
{
    KROrder out;
    out.n = n;
    out.range = range;
    if (n <= 0)
        return out;
    out.probe = RODegree(n - 1, n);
    const std::int64_t span = 2 * (2 * n + 6);
    Region region(DegreeWindow(out.probe.a - 2, out.probe.a + 2, out.probe.b - 2, out.probe.b + 2, 0), -span, span);
    auto ss = slice_ss(SpaceSpec::parse("P" + std::to_string(n), range), region, {RingKind::HZ, true, "kr-order"});
    const Page& e = ss.e_infinity();
    for (std::int64_t f = -span; f <= span; ++f) {
        SpotKey k{f, out.probe};
        if (!e.known(k)) {
            out.all_known = false;
            continue;
        }
        NormalForm nf = e.group_at(k);
        if (nf.is_zero())
            continue;
        out.graded.emplace_back(f, nf);
        for (const auto& t : nf.torsion)
            (t == 2 ? out.torsion_summands : out.other_torsion)++;
        out.free_rank += nf.free_rank;
    }
    for (std::size_t i = 0; i < out.torsion_summands; ++i)
        out.resolved_order *= 2;
    if (!out.all_known)
        out.diagnostic = "probe column not fully determined inside the window";
    else if (out.other_torsion)
        out.diagnostic = "torsion other than Z/2 in the probe column";
    else if (out.torsion_summands != static_cast<std::size_t>(n))
        out.diagnostic = "expected " + std::to_string(n) + " Z/2 summands, found " + std::to_string(out.torsion_summands);
    return out;
}

// ---------------------------------------------------------------------------------------------
// Ring structure on E∞

enum class Theory { HF2, HZ, kR };

inline std::string to_string(Theory t)
{
    switch (t) {
    case Theory::HF2: return "HF2";
    case Theory::HZ: return "HZ";
    case Theory::kR: return "kR";
    }
    return "?";
}

inline Theory parse_theory(const std::string& s)
{
    if (s == "HF2")
        return Theory::HF2;
    if (s == "HZ")
        return Theory::HZ;
    if (s == "kR")
        return Theory::kR;
    throw std::invalid_argument("unknown theory '" + s + "' (expected HF2, HZ or kR)");
}

inline SpectralSequence theory_sequence(Theory t, const SpaceSpec& space, const Region& region)
{
    switch (t) {
    case Theory::HF2: return hf2ss(space, region);
    case Theory::HZ: return hzss(space, region);
    case Theory::kR: return aslicess_kR(space, region);
    }
    throw std::invalid_argument("theory");
}

/// One E∞ generator: spot and normal-form index.
struct ClassRef {
    SpotKey spot;
    std::size_t index = 0;
    friend auto operator<=>(const ClassRef&, const ClassRef&) = default;
};

struct ProductEntry {
    ClassRef left, right;
    std::string left_label, right_label;
    SpotKey spot;
    std::vector<Integer> coordinates;   // in the normal form at spot; empty when zero or unknown
    std::vector<std::string> labels;    // nonzero terms, as "k·label"
    std::string rule;                   // which of the three rules applied
    std::vector<std::string> flags;     // "unknown", "outside", "not-a-cycle", "ill-defined", "coefficient-not-in-K"
    bool zero = true;
};

struct RingTable {
    Theory theory = Theory::HZ;
    SpaceSpec space;
    std::vector<ProductEntry> products;
    std::size_t generators = 0;
    std::size_t pairs = 0;
    std::size_t violations = 0;      // flagged "not-a-cycle", "ill-defined" or "coefficient-not-in-K"
    std::size_t delta_zero = 0;      // b_{nρ}·b_{nρ} products checked to vanish
    std::size_t sigma_zero = 0;      // b_{nρ+σ}·b_{mρ+σ} products checked to vanish
    std::size_t associativity_defects = 0;
    std::vector<std::string> examples;   // a few violations or associativity defects
};

/// Which rule governs a product of single-cell classes.
inline std::string product_rule(std::size_t i, std::size_t j)
{
    if (i == 0 || j == 0)
        return "unit";
    const CellInfo x = cell_info(i), y = cell_info(j);
    if (x.sigma && y.sigma)
        return "sigma-sigma";
    if (x.sigma || y.sigma)
        return "rho-sigma";
    return x.m == y.m ? "delta" : "rho-rho";
}

namespace detail {

inline std::optional<std::size_t> single_cell(const Chain& c)
{
    std::optional<std::size_t> cell;
    for (const auto& [t, k] : c) {
        if (cell && *cell != t.cell)
            return std::nullopt;
        cell = t.cell;
    }
    return cell;
}

inline std::string class_label(const ChainModel& model, const Entry& e, std::size_t i)
{
    return generator_labels(model, e).at(i);
}

}  // namespace detail

/// Products of all pairs of E∞ generators whose product spot lies in the region. Each product is
/// computed on representatives with the cell product and checked to be a cycle, independent of
/// the representative (boundaries times cycles land in boundaries), and to have coefficients in
/// K on ρ-cells of positive index.
inline RingTable ring_structure(Theory theory, const SpaceSpec& space, const Region& region, bool keep_entries = true)
{
    RingTable out;
    out.theory = theory;
    out.space = space;
    const SpectralSequence ss = theory_sequence(theory, space, region);
    const Page& e = ss.e_infinity();
    const ChainModel& model = e.model();

    struct Gen {
        ClassRef ref;
        Chain chain;
        std::optional<std::size_t> cell;
    };
    std::vector<Gen> gens;
    std::map<SpotKey, std::vector<Chain>> boundaries;
    for (const auto& [k, en] : e.entries()) {
        if (!en.known || en.is_zero())
            continue;
        for (std::size_t i = 0; i < en.normal_form().size(); ++i) {
            Chain c = to_chain(en.basis, en.generator_chain(i));
            gens.push_back({{k, i}, c, detail::single_cell(c)});
        }
        auto& bs = boundaries[k];
        for (std::size_t j = 0; j < en.boundaries.cols(); ++j)
            bs.push_back(to_chain(en.basis, en.boundaries.column(j)));
    }
    out.generators = gens.size();

    // Coefficient constraint: ρ-cell classes of positive index are 2-torsion at chain level modulo boundaries.
    const bool integral = theory != Theory::HF2;
    auto plus = [](const SpotKey& x, const SpotKey& y) { return SpotKey{x.filtration + y.filtration, x.degree + y.degree}; };

    std::map<SpotKey, std::unique_ptr<IntegerSolver>> solvers;
    for (const auto& [k, en] : e.entries())
        if (en.known)
            solvers.emplace(k, std::make_unique<IntegerSolver>(en.cycles));

    auto classify = [&](const SpotKey& s, const Chain& c, std::vector<std::string>& flags) -> std::optional<std::vector<Integer>> {
        if (c.empty())
            return std::vector<Integer>{};
        if (!region.contains(s)) {
            flags.push_back("outside");
            return std::nullopt;
        }
        if (!e.known(s)) {
            flags.push_back("unknown");
            return std::nullopt;
        }
        const Entry* en = e.find(s);
        if (!en) {
            flags.push_back("not-a-cycle");
            return std::nullopt;
        }
        auto v = class_of(*en, *solvers.at(s), c);
        if (!v)
            flags.push_back("not-a-cycle");
        return v;
    };
    auto is_zero_vec = [](const std::vector<Integer>& v) {
        return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
    };

    if (integral)
        for (const auto& g : gens)
            if (g.cell && *g.cell > 0 && !cell_info(*g.cell).sigma) {
                Chain twice;
                for (const auto& [t, k] : g.chain)
                    add_to(twice, t, 2 * k);
                std::vector<std::string> f;
                auto v = classify(g.ref.spot, twice, f);
                if (!v || !is_zero_vec(*v)) {
                    ++out.violations;
                    if (out.examples.size() < 10)
                        out.examples.push_back("coefficient-not-in-K: " +
                                               detail::class_label(model, *e.find(g.ref.spot), g.ref.index));
                }
            }

    std::mutex mu;
    parallel_for(gens.size(), [&](std::size_t i) {
        const Gen& x = gens[i];
        std::vector<ProductEntry> local;
        std::size_t pairs = 0, violations = 0, dz = 0, sz = 0;
        std::vector<std::string> ex;
        for (const Gen& y : gens) {
            const SpotKey s = plus(x.ref.spot, y.ref.spot);
            if (!region.contains(s))
                continue;
            ++pairs;
            ProductEntry p;
            p.left = x.ref;
            p.right = y.ref;
            p.spot = s;
            p.rule = x.cell && y.cell ? product_rule(*x.cell, *y.cell) : "mixed";
            Chain prod = space_product(model, x.chain, y.chain);
            auto v = classify(s, prod, p.flags);
            if (v) {
                // Independence of representatives: boundary·y and x·boundary must be boundaries.
                auto check = [&](const SpotKey& bs, const Chain& other, bool left) {
                    for (const auto& b : boundaries[bs]) {
                        Chain c = left ? space_product(model, b, other) : space_product(model, other, b);
                        std::vector<std::string> f;
                        auto w = classify(s, c, f);
                        if (w && !is_zero_vec(*w))
                            return false;
                    }
                    return true;
                };
                if (!check(x.ref.spot, y.chain, true) || !check(y.ref.spot, x.chain, false))
                    p.flags.push_back("ill-defined");
                p.zero = is_zero_vec(*v);
                if (!p.zero)
                    p.coordinates = *v;
            }
            const bool bad = std::any_of(p.flags.begin(), p.flags.end(), [](const std::string& f) {
                return f == "not-a-cycle" || f == "ill-defined";
            });
            if (bad) {
                ++violations;
                if (ex.size() < 5)
                    ex.push_back(p.flags.back() + ": (" + detail::class_label(model, *e.find(x.ref.spot), x.ref.index) +
                                 ")·(" + detail::class_label(model, *e.find(y.ref.spot), y.ref.index) + ")");
            }
            if (p.rule == "delta" || p.rule == "sigma-sigma") {
                if (!prod.empty()) {
                    ++violations;
                    if (ex.size() < 5)
                        ex.push_back(p.rule + " product is nonzero at chain level");
                }
                (p.rule == "delta" ? dz : sz)++;
            }
            if (keep_entries && (!p.zero || !p.flags.empty()))
                local.push_back(std::move(p));
        }
        std::lock_guard<std::mutex> lock(mu);
        out.pairs += pairs;
        out.violations += violations;
        out.delta_zero += dz;
        out.sigma_zero += sz;
        for (auto& s : ex)
            if (out.examples.size() < 10)
                out.examples.push_back(std::move(s));
        for (auto& p : local)
            out.products.push_back(std::move(p));
    });
    std::sort(out.products.begin(), out.products.end(), [](const ProductEntry& a, const ProductEntry& b) {
        return std::tie(a.left, a.right) < std::tie(b.left, b.right);
    });
    for (auto& p : out.products) {
        p.left_label = detail::class_label(model, *e.find(p.left.spot), p.left.index);
        p.right_label = detail::class_label(model, *e.find(p.right.spot), p.right.index);
        if (!p.zero) {
            auto names = generator_labels(model, *e.find(p.spot));
            for (std::size_t i = 0; i < p.coordinates.size(); ++i)
                if (p.coordinates[i] != 0)
                    p.labels.push_back((p.coordinates[i] == 1 ? std::string() : p.coordinates[i].str() + "·") + names[i]);
        }
    }

    // Associativity of the rules on single-cell classes a_σ b_{nρ} (n ≥ 1): (x·y)·z against x·(y·z).
    std::vector<const Gen*> rho;
    for (const auto& g : gens)
        if (g.cell && *g.cell > 0 && !cell_info(*g.cell).sigma && g.chain.size() == 1 &&
            g.chain.begin()->first.coeff == positive(0, 1))
            rho.push_back(&g);
    for (const Gen* x : rho)
        for (const Gen* y : rho)
            for (const Gen* z : rho) {
                Chain l = space_product(model, space_product(model, x->chain, y->chain), z->chain);
                Chain r = space_product(model, x->chain, space_product(model, y->chain, z->chain));
                if (l != r) {
                    ++out.associativity_defects;
                    if (out.associativity_defects == 1)
                        out.examples.push_back("associativity: (" + model.label(x->chain.begin()->first) + "·" +
                                               model.label(y->chain.begin()->first) + ")·" +
                                               model.label(z->chain.begin()->first) + " differs from the other bracketing");
                }
            }
    return out;
}

}  // namespace ess

