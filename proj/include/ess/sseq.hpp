#pragma once

#include "ess/coefficients.hpp"
#include "ess/parallel.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace ess {

struct Cell {
    std::string label;
    RODegree degree;
    std::int64_t filtration = 0;
};

using CellBasis = std::vector<Cell>;

/// coefficient monomial ⊗ cell ⊗ v̄₁^vbar: one E₁ chain basis element.
struct Term {
    Monomial coeff;
    std::size_t cell = 0;
    std::int64_t vbar = 0;

    friend auto operator<=>(const Term&, const Term&) = default;
};

using Chain = std::map<Term, Integer>;

inline void add_to(Chain& c, const Term& t, const Integer& k)
{
    if (k == 0)
        return;
    auto [it, inserted] = c.emplace(t, k);
    if (!inserted) {
        it->second += k;
        if (it->second == 0)
            c.erase(it);
    }
}

/// Cell: filtration is the cell's own index. Slice: filtration is 2·(v̄₁ power).
enum class FiltrationMode { Cell, Slice };

struct SpotKey {
    std::int64_t filtration = 0;
    RODegree degree;

    friend auto operator<=>(const SpotKey&, const SpotKey&) = default;
};

inline std::string to_string(const SpotKey& k) { return "[" + std::to_string(k.filtration) + "]" + to_string(k.degree); }

/// Generators of an E₁-page: coefficient ring ⊗ cells (⊗ v̄₁-powers in a range).
class ChainModel {
public:
    ChainModel(GradedRing ring, CellBasis cells, FiltrationMode mode, std::int64_t vbar_min = 0,
               std::int64_t vbar_max = 0)
        : ring_(ring), cells_(std::move(cells)), mode_(mode), vbar_min_(vbar_min), vbar_max_(vbar_max)
    {
    }

    const GradedRing& ring() const { return ring_; }
    const CellBasis& cells() const { return cells_; }
    FiltrationMode mode() const { return mode_; }
    std::int64_t vbar_min() const { return vbar_min_; }
    std::int64_t vbar_max() const { return vbar_max_; }

    std::optional<std::size_t> find_cell(const std::string& label) const
    {
        for (std::size_t i = 0; i < cells_.size(); ++i)
            if (cells_[i].label == label)
                return i;
        return std::nullopt;
    }

    RODegree degree(const Term& t) const
    {
        return ring_.degree(t.coeff) + cells_[t.cell].degree + t.vbar * RODegree::rho();
    }
    std::int64_t filtration(const Term& t) const
    {
        return mode_ == FiltrationMode::Cell ? cells_[t.cell].filtration : 2 * t.vbar;
    }
    SpotKey spot(const Term& t) const { return {filtration(t), degree(t)}; }
    Integer order(const Term& t) const { return ring_.order_of(t.coeff); }

    bool contains(const Term& t) const
    {
        return t.cell < cells_.size() && t.vbar >= vbar_min_ && t.vbar <= vbar_max_ && ring_.is_basis(t.coeff);
    }

    std::string label(const Term& t) const
    {
        std::string s = ring_.label(t.coeff);
        const std::string& c = cells_[t.cell].label;
        if (!c.empty())
            s = (s == "1" ? c : s + " " + c);
        if (t.vbar != 0)
            s += t.vbar == 1 ? " vbar" : " vbar^" + std::to_string(t.vbar);
        return s;
    }

    std::vector<Term> terms_at(const SpotKey& k) const
    {
        std::vector<Term> out;
        for (std::size_t c = 0; c < cells_.size(); ++c) {
            for (std::int64_t m = vbar_min_; m <= vbar_max_; ++m) {
                if (mode_ == FiltrationMode::Cell ? cells_[c].filtration != k.filtration : 2 * m != k.filtration)
                    continue;
                RODegree w = k.degree - cells_[c].degree - m * RODegree::rho();
                for (const auto& b : ring_.basis(w))
                    out.push_back({b.monomial, c, m});
            }
        }
        return out;
    }

private:
    GradedRing ring_;
    CellBasis cells_;
    FiltrationMode mode_;
    std::int64_t vbar_min_, vbar_max_;
};

/// Degrees and filtrations for which pages are computed.
struct Region {
    DegreeWindow window;
    std::int64_t fil_min = 0;
    std::int64_t fil_max = 0;

    Region() = default;
    Region(DegreeWindow w, std::int64_t fmin, std::int64_t fmax) : window(w), fil_min(fmin), fil_max(fmax) {}
    explicit Region(DegreeWindow w) : window(w), fil_min(0), fil_max(w.filtration_max) {}

    bool contains(const SpotKey& k) const
    {
        return window.contains(k.degree) && k.filtration >= fil_min && k.filtration <= fil_max;
    }
};

/// A generator-level differential: d(term) as a chain, shifting filtration by a fixed amount
/// and total degree by -1.
struct DifferentialRule {
    std::string name;
    std::int64_t filtration_shift = 0;
    std::function<Chain(const Term&)> apply;
};

inline SpotKey shifted(const SpotKey& k, std::int64_t filtration_shift)
{
    return {k.filtration + filtration_shift, k.degree - RODegree::one()};
}

/// One spot of a page: E₁ chain basis, cycles Z_r and boundaries B_r (as lattices in Z^basis,
/// B_r containing the torsion relations), and the resulting group Z_r / B_r.
struct Entry {
    std::vector<Term> basis;
    Matrix cycles;
    Matrix boundaries;
    bool known = true;
    PresentedGroup group;

    const NormalForm& normal_form() const { return group.normal_form(); }
    bool is_zero() const { return group.is_zero(); }

    /// Chain vector (over basis) representing normal generator i.
    std::vector<Integer> generator_chain(std::size_t i) const { return cycles * group.normal_generator(i); }

    /// Coordinates in normal form of a chain vector lying in Z_r.
    std::optional<std::vector<Integer>> coordinates(const std::vector<Integer>& chain) const
    {
        IntegerSolver solver(cycles);
        auto c = solver.solve(chain);
        if (!c)
            return std::nullopt;
        return group.coordinates(*c);
    }
};

inline Matrix relation_lattice(const ChainModel& model, const std::vector<Term>& basis)
{
    std::vector<std::vector<Integer>> cols;
    for (std::size_t i = 0; i < basis.size(); ++i) {
        Integer ord = model.order(basis[i]);
        if (ord != 0) {
            std::vector<Integer> c(basis.size());
            c[i] = ord;
            cols.push_back(std::move(c));
        }
    }
    return cols.empty() ? Matrix(basis.size(), 0) : from_columns(basis.size(), cols);
}

inline Entry make_entry(const ChainModel& model, std::vector<Term> basis, Matrix cycles, Matrix boundaries, bool known)
{
    Entry e;
    e.basis = std::move(basis);
    e.cycles = std::move(cycles);
    e.boundaries = std::move(boundaries);
    e.known = known;
    std::vector<std::string> names;
    for (const auto& t : e.basis)
        names.push_back(model.label(t));
    e.group = quotient_of_lattice(names, e.cycles, e.boundaries);
    return e;
}

inline Entry e1_entry(const ChainModel& model, std::vector<Term> basis)
{
    Matrix rel = relation_lattice(model, basis);
    const std::size_t n = basis.size();
    return make_entry(model, std::move(basis), Matrix::identity(n), rel, true);
}

class Page {
public:
    Page() = default;
    Page(std::shared_ptr<const ChainModel> model, Region region, int index)
        : model_(std::move(model)), region_(region), index_(index)
    {
    }

    int index() const { return index_; }
    const ChainModel& model() const { return *model_; }
    std::shared_ptr<const ChainModel> model_ptr() const { return model_; }
    const Region& region() const { return region_; }
    const std::map<SpotKey, Entry>& entries() const { return entries_; }
    std::map<SpotKey, Entry>& mutable_entries() { return entries_; }
    const std::optional<DifferentialRule>& differential() const { return differential_; }
    const std::vector<std::string>& history() const { return history_; }

    const Entry* find(const SpotKey& k) const
    {
        auto it = entries_.find(k);
        return it == entries_.end() ? nullptr : &it->second;
    }

    /// Group at a spot; spots in the region without generators are zero.
    NormalForm group_at(const SpotKey& k) const
    {
        const Entry* e = find(k);
        return e ? e->normal_form() : NormalForm{};
    }

    /// False when the spot lies outside the region or its value depends on data outside it.
    bool known(const SpotKey& k) const
    {
        if (!region_.contains(k))
            return false;
        const Entry* e = find(k);
        return !e || e->known;
    }

    /// Chain-level matrix of the installed differential out of spot k (rows follow target_basis).
    Matrix differential_matrix(const DifferentialRule& rule, const SpotKey& k, const std::vector<Term>& source_basis,
                               const std::vector<Term>& target_basis) const
    {
        const SpotKey t = shifted(k, rule.filtration_shift);
        std::map<Term, std::size_t> index;
        for (std::size_t i = 0; i < target_basis.size(); ++i)
            index.emplace(target_basis[i], i);
        Matrix m(target_basis.size(), source_basis.size());
        for (std::size_t j = 0; j < source_basis.size(); ++j)
            for (const auto& [term, c] : rule.apply(source_basis[j])) {
                if (model_->spot(term) != t)
                    throw ComputationError("rule " + rule.name + ": " + model_->label(source_basis[j]) + " maps to " +
                                           model_->label(term) + " outside " + to_string(t));
                auto it = index.find(term);
                if (it == index.end())
                    throw ComputationError("rule " + rule.name + ": target " + model_->label(term) +
                                           " is not a basis element");
                m(it->second, j) += c;
            }
        return m;
    }

    /// Spot data used by the differential: an in-region entry, or an E₁ stand-in outside the region.
    struct Neighbor {
        Entry entry;
        bool present = false;  // has generators
        bool known = true;
    };

    Neighbor neighbor(const SpotKey& k) const
    {
        Neighbor n;
        if (region_.contains(k)) {
            if (const Entry* e = find(k)) {
                n.entry = *e;
                n.present = true;
                n.known = e->known;
            }
            return n;
        }
        auto terms = model_->terms_at(k);
        if (terms.empty())
            return n;
        n.entry = e1_entry(*model_, std::move(terms));
        n.present = true;
        // Outside the region only E₁ data is available.
        n.known = index_ == 1;
        return n;
    }

    friend Page build_E1(std::shared_ptr<const ChainModel>, const Region&);
    friend Page install(Page, DifferentialRule);
    friend Page turn_page(const Page&);

private:
    std::shared_ptr<const ChainModel> model_;
    Region region_;
    int index_ = 1;
    std::map<SpotKey, Entry> entries_;
    std::optional<DifferentialRule> differential_;
    std::vector<std::string> history_;
};

inline Page build_E1(std::shared_ptr<const ChainModel> model, const Region& region)
{
    Page p(model, region, 1);
    std::vector<SpotKey> keys;
    for (std::int64_t f = region.fil_min; f <= region.fil_max; ++f)
        region.window.for_each([&](const RODegree& d) { keys.push_back({f, d}); });
    std::vector<std::optional<Entry>> built(keys.size());
    parallel_for(keys.size(), [&](std::size_t i) {
        auto terms = model->terms_at(keys[i]);
        if (!terms.empty())
            built[i] = e1_entry(*model, std::move(terms));
    });
    for (std::size_t i = 0; i < keys.size(); ++i)
        if (built[i])
            p.entries_.emplace(keys[i], std::move(*built[i]));
    return p;
}

namespace detail {

inline bool in_lattice(const Matrix& vectors, const Matrix& lattice)
{
    if (vectors.cols() == 0)
        return true;
    if (lattice.cols() == 0)
        return vectors.is_zero();
    return columns_in_lattice(vectors, IntegerSolver(lattice));
}

}  // namespace detail

/// Install a differential on page p after checking degrees, well-definedness on E_r and d∘d = 0.
inline Page install(Page p, DifferentialRule rule)
{
    std::vector<const std::pair<const SpotKey, Entry>*> items;
    for (const auto& kv : p.entries_)
        items.push_back(&kv);
    parallel_for(items.size(), [&](std::size_t i) {
        const SpotKey& k = items[i]->first;
        const Entry& src = items[i]->second;
        const SpotKey tk = shifted(k, rule.filtration_shift);
        auto tgt = p.neighbor(tk);
        const std::vector<Term> empty;
        Matrix d = p.differential_matrix(rule, k, src.basis, tgt.present ? tgt.entry.basis : empty);
        if (!tgt.present || !tgt.known || !src.known)
            return;
        if (!detail::in_lattice(d * src.cycles, tgt.entry.cycles))
            throw ComputationError("rule " + rule.name + " does not carry cycles to cycles at " + to_string(k));
        if (!detail::in_lattice(d * src.boundaries, tgt.entry.boundaries))
            throw ComputationError("rule " + rule.name + " does not carry boundaries to boundaries at " + to_string(k));
        const SpotKey t2 = shifted(tk, rule.filtration_shift);
        auto tgt2 = p.neighbor(t2);
        Matrix d2 = p.differential_matrix(rule, tk, tgt.entry.basis, tgt2.present ? tgt2.entry.basis : empty);
        Matrix dd = d2 * (d * src.cycles);
        if (!tgt2.present) {
            if (!dd.is_zero())
                throw ComputationError("d∘d ≠ 0 at " + to_string(k));
        }
        else if (tgt2.known && !detail::in_lattice(dd, tgt2.entry.boundaries))
            throw ComputationError("d∘d ≠ 0 at " + to_string(k) + " for rule " + rule.name);
    });
    p.differential_ = std::move(rule);
    return p;
}

/// Homology of the installed differential at every spot. Without a differential the page is copied.
inline Page turn_page(const Page& p)
{
    Page next(p.model_, p.region_, p.index_ + 1);
    next.history_ = p.history_;
    if (!p.differential_) {
        next.entries_ = p.entries_;
        return next;
    }
    const DifferentialRule& rule = *p.differential_;
    next.history_.push_back(rule.name + "@E" + std::to_string(p.index_));
    std::vector<const std::pair<const SpotKey, Entry>*> items;
    for (const auto& kv : p.entries_)
        items.push_back(&kv);
    std::vector<Entry> out(items.size());
    const std::vector<Term> empty;
    parallel_for(items.size(), [&](std::size_t i) {
        const SpotKey& k = items[i]->first;
        const Entry& x = items[i]->second;
        const std::size_t n = x.basis.size();
        bool known = x.known;

        // Outgoing: Z_{r+1} = {z ∈ Z_r : d z ∈ B_r(target)}.
        auto tgt = p.neighbor(shifted(k, rule.filtration_shift));
        Matrix cycles = x.cycles;
        if (tgt.present) {
            Matrix dz = p.differential_matrix(rule, k, x.basis, tgt.entry.basis) * x.cycles;
            if (!dz.is_zero()) {
                if (!tgt.known)
                    known = false;
                Matrix coeffs = preimage_lattice(dz, tgt.entry.boundaries);
                cycles = x.cycles * coeffs;
            }
        }
        else {
            // Validates that the rule has nowhere to go.
            (void)p.differential_matrix(rule, k, x.basis, empty);
        }

        // Incoming: B_{r+1} = B_r + d Z_r(source).
        Matrix boundaries = x.boundaries;
        const SpotKey sk{k.filtration - rule.filtration_shift, k.degree + RODegree::one()};
        auto source = p.neighbor(sk);
        if (source.present) {
            Matrix d_in = p.differential_matrix(rule, sk, source.entry.basis, x.basis);
            Matrix image = d_in * source.entry.cycles;
            if (!image.is_zero()) {
                if (!source.known)
                    known = false;
                boundaries = lattice_basis(hconcat(boundaries, image), n);
            }
        }
        out[i] = make_entry(p.model(), x.basis, cycles, boundaries, known);
    });
    for (std::size_t i = 0; i < items.size(); ++i)
        next.entries_.emplace(items[i]->first, std::move(out[i]));
    return next;
}

/// Induced map of the installed differential on normal-form generators at spot k.
/// Rows index the target's normal generators. nullopt when the target is unknown.
inline std::optional<Matrix> induced_differential(const Page& p, const SpotKey& k)
{
    const Entry* src = p.find(k);
    if (!src || !p.differential())
        return std::nullopt;
    const SpotKey tk = shifted(k, p.differential()->filtration_shift);
    const Entry* tgt = p.find(tk);
    const std::size_t cols = src->normal_form().size();
    if (!tgt)
        return p.region().contains(tk) ? std::optional<Matrix>(Matrix(0, cols)) : std::nullopt;
    if (!tgt->known || !src->known)
        return std::nullopt;
    Matrix d = p.differential_matrix(*p.differential(), k, src->basis, tgt->basis);
    Matrix out(tgt->normal_form().size(), cols);
    for (std::size_t j = 0; j < cols; ++j) {
        auto coords = tgt->coordinates(d * src->generator_chain(j));
        if (!coords)
            throw ComputationError("induced_differential: image is not a cycle at " + to_string(tk));
        for (std::size_t i = 0; i < coords->size(); ++i)
            out(i, j) = (*coords)[i];
    }
    return out;
}

/// Labels of the normal-form generators of an entry, written as chain representatives.
inline std::vector<std::string> generator_labels(const ChainModel& model, const Entry& e)
{
    std::vector<std::string> names;
    for (const auto& t : e.basis)
        names.push_back(model.label(t));
    std::vector<std::string> out;
    for (std::size_t i = 0; i < e.normal_form().size(); ++i)
        out.push_back(combination_label(names, e.generator_chain(i)));
    return out;
}

inline Chain to_chain(const std::vector<Term>& basis, const std::vector<Integer>& v)
{
    Chain c;
    for (std::size_t i = 0; i < basis.size(); ++i)
        add_to(c, basis[i], v[i]);
    return c;
}

/// Express a chain over the basis of an entry; nullopt if a term is missing.
inline std::optional<std::vector<Integer>> to_vector(const std::vector<Term>& basis, const Chain& c)
{
    std::vector<Integer> v(basis.size());
    for (const auto& [t, k] : c) {
        auto it = std::find(basis.begin(), basis.end(), t);
        if (it == basis.end())
            return std::nullopt;
        v[static_cast<std::size_t>(it - basis.begin())] += k;
    }
    return v;
}

/// Chain-level operator (multiplication by a class, or a morphism into another model).
using ChainOperator = std::function<Chain(const Term&)>;

inline Chain apply_operator(const ChainOperator& f, const Chain& c)
{
    Chain out;
    for (const auto& [t, k] : c)
        for (const auto& [t2, k2] : f(t))
            add_to(out, t2, k * k2);
    return out;
}

/// Induced map on page generators of a chain operator that moves spot k to spot t of page q
/// (q may equal p). nullopt when the image is not a cycle or the target is unknown.
inline std::optional<Matrix> induced_operator(const ChainOperator& f, const Page& p, const SpotKey& k, const Page& q,
                                              const SpotKey& t)
{
    const Entry* src = p.find(k);
    if (!src)
        return Matrix(0, 0);
    const std::size_t cols = src->normal_form().size();
    if (!q.known(t))
        return std::nullopt;
    const Entry* tgt = q.find(t);
    Matrix out(tgt ? tgt->normal_form().size() : 0, cols);
    for (std::size_t j = 0; j < cols; ++j) {
        Chain image = apply_operator(f, to_chain(src->basis, src->generator_chain(j)));
        if (!tgt) {
            if (!image.empty() && !q.model().terms_at(t).empty())
                return std::nullopt;
            continue;
        }
        auto v = to_vector(tgt->basis, image);
        if (!v)
            return std::nullopt;
        auto coords = tgt->coordinates(*v);
        if (!coords)
            return std::nullopt;
        for (std::size_t i = 0; i < coords->size(); ++i)
            out(i, j) = (*coords)[i];
    }
    return out;
}

/// Chain-level multiplication by a coefficient monomial (a_σ, u, ...) and/or v̄₁-power.
inline ChainOperator multiply_by(const ChainModel& model, const Monomial& m, std::int64_t vbar = 0)
{
    return [&model, m, vbar](const Term& t) {
        Chain out;
        Product p = model.ring().multiply(m, t.coeff);
        if (p.is_zero())
            return out;
        Term r{p.monomial, t.cell, t.vbar + vbar};
        if (model.contains(r))
            add_to(out, r, p.coefficient);
        return out;
    };
}

struct Morphism {
    std::string name;
    ChainOperator apply;
    std::int64_t filtration_shift = 0;
    RODegree degree_shift{};
};

struct CompareReport {
    bool ok = true;
    std::size_t checked = 0;
    std::size_t skipped = 0;
    std::vector<std::string> failures;
};

/// Check that f is a map of pages: cycles go to cycles, and f∘d - d∘f lands in target boundaries.
inline CompareReport compare(const Morphism& f, const Page& source, const Page& target)
{
    CompareReport rep;
    auto fail = [&](const std::string& msg) {
        rep.ok = false;
        if (rep.failures.size() < 20)
            rep.failures.push_back(msg);
    };
    for (const auto& [k, e] : source.entries()) {
        const SpotKey fk{k.filtration + f.filtration_shift, k.degree + f.degree_shift};
        if (!e.known || !target.known(fk)) {
            ++rep.skipped;
            continue;
        }
        const Entry* te = target.find(fk);
        for (std::size_t c = 0; c < e.cycles.cols(); ++c) {
            Chain z = to_chain(e.basis, e.cycles.column(c));
            Chain fz = apply_operator(f.apply, z);
            if (!te) {
                if (!fz.empty())
                    fail(f.name + ": image of a cycle at " + to_string(k) + " lands in an empty spot");
                continue;
            }
            auto v = to_vector(te->basis, fz);
            if (!v || !IntegerSolver(te->cycles).solvable(*v)) {
                fail(f.name + ": cycle at " + to_string(k) + " is not carried to a cycle");
                continue;
            }
            if (!source.differential() && !target.differential()) {
                ++rep.checked;
                continue;
            }
            Chain lhs, rhs;
            if (source.differential())
                lhs = apply_operator(f.apply, apply_operator(source.differential()->apply, z));
            if (target.differential())
                rhs = apply_operator(target.differential()->apply, fz);
            for (const auto& [t, x] : rhs)
                add_to(lhs, t, -x);
            if (lhs.empty()) {
                ++rep.checked;
                continue;
            }
            const std::int64_t shift = target.differential() ? target.differential()->filtration_shift
                                                             : source.differential()->filtration_shift;
            const SpotKey dk = shifted(fk, shift);
            if (!target.known(dk)) {
                ++rep.skipped;
                continue;
            }
            const Entry* de = target.find(dk);
            auto w = de ? to_vector(de->basis, lhs) : std::nullopt;
            if (!w || !detail::in_lattice(from_columns(w->size(), {*w}), de->boundaries)) {
                fail(f.name + ": f∘d ≠ d∘f on a cycle at " + to_string(k));
                continue;
            }
            ++rep.checked;
        }
    }
    return rep;
}

/// A possible d_r from source to target that must be ruled out for collapse.
struct VanishingCandidate {
    int r = 0;
    SpotKey source;
    SpotKey target;
    NormalForm source_group;
    NormalForm target_group;
    std::string reason;  // empty when unresolved

    bool resolved() const { return !reason.empty(); }
};

struct VanishingReport {
    bool certified = true;
    std::size_t spots_checked = 0;
    std::size_t degree_zero = 0;   // target group zero
    std::size_t outside = 0;       // target outside the computed region, or unknown
    std::vector<VanishingCandidate> candidates;

    std::size_t unresolved() const
    {
        std::size_t n = 0;
        for (const auto& c : candidates)
            n += !c.resolved();
        return n;
    }
};

/// A structural argument: returns a reason string when it forces d_r(source) = 0.
using VanishingReason = std::function<std::optional<std::string>(const Page&, int r, const SpotKey&, const SpotKey&)>;

/// Reason: Hom(source group, target group) = 0.
inline VanishingReason hom_vanishing_reason()
{
    return [](const Page& p, int, const SpotKey& s, const SpotKey& t) -> std::optional<std::string> {
        if (hom_vanishes(p.group_at(s), p.group_at(t)))
            return std::string("hom-vanishing");
        return std::nullopt;
    };
}

/// For each r in [r_min, r_max], every known nonzero spot is paired with its d_r target
/// (filtration moved by shift(r), degree by -1). The page is treated as E_r for all such r,
/// which is valid once every shorter differential has been ruled out.
inline VanishingReport exhaustive_vanishing_check(const Page& p, int r_min, int r_max,
                                                  const std::function<std::int64_t(int)>& shift,
                                                  const std::vector<VanishingReason>& reasons)
{
    VanishingReport rep;
    for (int r = r_min; r <= r_max; ++r) {
        const std::int64_t sh = shift(r);
        for (const auto& [k, e] : p.entries()) {
            if (e.is_zero())
                continue;
            ++rep.spots_checked;
            const SpotKey t = shifted(k, sh);
            if (!e.known || !p.known(t)) {
                if (!p.region().contains(t) && p.model().terms_at(t).empty())
                    ++rep.degree_zero;
                else
                    ++rep.outside;
                continue;
            }
            if (p.group_at(t).is_zero()) {
                ++rep.degree_zero;
                continue;
            }
            VanishingCandidate c{r, k, t, p.group_at(k), p.group_at(t), ""};
            for (const auto& reason : reasons)
                if (auto why = reason(p, r, k, t)) {
                    c.reason = *why;
                    break;
                }
            if (!c.resolved())
                rep.certified = false;
            rep.candidates.push_back(std::move(c));
        }
    }
    return rep;
}

}  // namespace ess
