#pragma once

#include "ess/lattice.hpp"

#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace ess {

/// Raised when an algebraic precondition fails (ill-defined map, d∘d ≠ 0, ...).
class ComputationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Formal linear combination of named generators, e.g. "2·x + y".
inline std::string combination_label(const std::vector<std::string>& names, const std::vector<Integer>& coeffs)
{
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const Integer& c = coeffs[i];
        if (c == 0)
            continue;
        if (!first)
            os << (c < 0 ? " - " : " + ");
        else if (c < 0)
            os << '-';
        Integer ac = abs(c);
        if (ac != 1)
            os << ac << "·";
        os << names[i];
        first = false;
    }
    return first ? std::string("0") : os.str();
}

/// Invariant-factor decomposition Z/d_1 ⊕ ... ⊕ Z/d_k ⊕ Z^free with d_i | d_{i+1}, d_i > 1.
struct NormalForm {
    std::vector<Integer> torsion;
    std::size_t free_rank = 0;

    std::size_t size() const { return torsion.size() + free_rank; }
    bool is_zero() const { return size() == 0; }
    friend bool operator==(const NormalForm&, const NormalForm&) = default;
};

inline std::string describe(const NormalForm& nf)
{
    if (nf.is_zero())
        return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& t : nf.torsion) {
        os << (first ? "" : " ⊕ ") << "Z/" << t;
        first = false;
    }
    for (std::size_t i = 0; i < nf.free_rank; ++i) {
        os << (first ? "" : " ⊕ ") << "Z";
        first = false;
    }
    return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const NormalForm& nf) { return os << describe(nf); }

/// Finitely generated abelian group Z^n / (relation columns), with named generators.
/// The normal form is computed once at construction and never mutated.
class PresentedGroup {
public:
    PresentedGroup() : PresentedGroup(std::vector<std::string>{}, Matrix(0, 0)) {}

    PresentedGroup(std::vector<std::string> names, Matrix relations)
        : names_(std::move(names)), relations_(std::move(relations))
    {
        if (relations_.cols() == 0)
            relations_ = Matrix(names_.size(), 0);
        if (relations_.rows() != names_.size())
            throw std::invalid_argument("PresentedGroup: relation rows must match generator count");
        build_normal_form();
    }

    static PresentedGroup zero() { return PresentedGroup(); }
    static PresentedGroup free(std::vector<std::string> names)
    {
        const std::size_t n = names.size();
        return PresentedGroup(std::move(names), Matrix(n, 0));
    }
    /// One generator per name with the given orders (0 meaning infinite order).
    static PresentedGroup diagonal(std::vector<std::string> names, const std::vector<Integer>& orders)
    {
        Matrix rel(names.size(), 0);
        std::vector<std::vector<Integer>> cols;
        for (std::size_t i = 0; i < orders.size(); ++i)
            if (orders[i] != 0) {
                std::vector<Integer> c(names.size());
                c[i] = orders[i];
                cols.push_back(std::move(c));
            }
        if (!cols.empty())
            rel = from_columns(names.size(), cols);
        return PresentedGroup(std::move(names), std::move(rel));
    }

    std::size_t generator_count() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const Matrix& relations() const { return relations_; }
    const NormalForm& normal_form() const { return normal_; }
    bool is_zero() const { return normal_.is_zero(); }

    /// Order when finite; nullopt for infinite groups.
    std::optional<Integer> order() const
    {
        if (normal_.free_rank)
            return std::nullopt;
        Integer o = 1;
        for (const auto& t : normal_.torsion)
            o *= t;
        return o;
    }

    /// Coordinates of a generator-space vector in the normal form (torsion part reduced).
    std::vector<Integer> coordinates(const std::vector<Integer>& x) const
    {
        std::vector<Integer> y = smith_->u * x;
        std::vector<Integer> out;
        out.reserve(normal_.size());
        for (std::size_t i : kept_rows_) {
            Integer v = y[i];
            if (i < smith_->rank) {
                const Integer& d = smith_->factor(i);
                v %= d;
                if (v < 0)
                    v += d;
            }
            out.push_back(v);
        }
        return out;
    }

    bool is_zero_element(const std::vector<Integer>& x) const
    {
        for (const auto& c : coordinates(x))
            if (c != 0)
                return false;
        return true;
    }

    /// Normal-form generator i as a vector over the presentation generators.
    std::vector<Integer> normal_generator(std::size_t i) const
    {
        const std::size_t row = kept_rows_.at(i);
        std::vector<Integer> v(names_.size());
        for (std::size_t r = 0; r < names_.size(); ++r)
            v[r] = smith_->u_inverse(r, row);
        return v;
    }

    /// Order of normal-form generator i (0 = infinite).
    Integer normal_order(std::size_t i) const
    {
        return i < normal_.torsion.size() ? normal_.torsion[i] : Integer(0);
    }

    std::vector<std::string> normal_labels() const
    {
        std::vector<std::string> out;
        for (std::size_t i = 0; i < normal_.size(); ++i)
            out.push_back(combination_label(names_, normal_generator(i)));
        return out;
    }

    bool contains_relation(const std::vector<Integer>& x) const { return relation_solver_->solvable(x); }
    const IntegerSolver& relation_solver() const { return *relation_solver_; }

private:
    void build_normal_form()
    {
        smith_ = std::make_shared<SmithForm>(smith_normal_form(relations_));
        relation_solver_ = std::make_shared<IntegerSolver>(relations_);
        kept_rows_.clear();
        normal_ = {};
        for (std::size_t i = 0; i < names_.size(); ++i) {
            if (i < smith_->rank) {
                if (smith_->factor(i) == 1)
                    continue;
                normal_.torsion.push_back(smith_->factor(i));
            }
            else
                ++normal_.free_rank;
            kept_rows_.push_back(i);
        }
    }

    std::vector<std::string> names_;
    Matrix relations_;
    NormalForm normal_;
    std::vector<std::size_t> kept_rows_;
    std::shared_ptr<const SmithForm> smith_;
    std::shared_ptr<const IntegerSolver> relation_solver_;
};

/// Homomorphism given on generators; well-definedness is verified at construction.
class GroupMap {
public:
    GroupMap(PresentedGroup source, PresentedGroup target, Matrix matrix)
        : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix))
    {
        if (matrix_.rows() != target_.generator_count() || matrix_.cols() != source_.generator_count()) {
            if (matrix_.empty() && (target_.generator_count() == 0 || source_.generator_count() == 0))
                matrix_ = Matrix(target_.generator_count(), source_.generator_count());
            else
                throw std::invalid_argument("GroupMap: matrix shape does not match generator counts");
        }
        Matrix image_of_relations = matrix_ * source_.relations();
        if (!columns_in_lattice(image_of_relations, target_.relation_solver()))
            throw ComputationError("GroupMap: relations of the source are not carried into relations of the target");
    }

    static GroupMap multiplication(const PresentedGroup& g, const Integer& k)
    {
        Matrix m = Matrix::identity(g.generator_count());
        for (std::size_t i = 0; i < g.generator_count(); ++i)
            m(i, i) = k;
        return GroupMap(g, g, std::move(m));
    }

    const PresentedGroup& source() const { return source_; }
    const PresentedGroup& target() const { return target_; }
    const Matrix& matrix() const { return matrix_; }

    std::vector<Integer> apply(const std::vector<Integer>& x) const { return matrix_ * x; }

    /// True when every source generator lands in the relation lattice of the target.
    bool is_zero() const
    {
        return columns_in_lattice(matrix_, target_.relation_solver());
    }

private:
    PresentedGroup source_;
    PresentedGroup target_;
    Matrix matrix_;
};

inline GroupMap compose(const GroupMap& g, const GroupMap& f)
{
    if (g.source().generator_count() != f.target().generator_count())
        throw std::invalid_argument("compose: intermediate groups differ");
    return GroupMap(f.source(), g.target(), g.matrix() * f.matrix());
}

/// Subgroup lattice L ⊂ Z^n (containing the relation lattice R) presented as L / R.
inline PresentedGroup quotient_of_lattice(const std::vector<std::string>& ambient_names, const Matrix& lattice,
                                          const Matrix& killed)
{
    IntegerSolver solver(lattice);
    std::vector<std::vector<Integer>> rel_cols;
    for (std::size_t c = 0; c < killed.cols(); ++c) {
        auto coords = solver.solve(killed.column(c));
        if (!coords)
            throw ComputationError("quotient_of_lattice: killed vector outside the lattice");
        rel_cols.push_back(std::move(*coords));
    }
    std::vector<std::string> names;
    for (std::size_t j = 0; j < lattice.cols(); ++j)
        names.push_back(combination_label(ambient_names, lattice.column(j)));
    Matrix rel = rel_cols.empty() ? Matrix(lattice.cols(), 0) : from_columns(lattice.cols(), rel_cols);
    return PresentedGroup(std::move(names), std::move(rel));
}

struct KernelResult {
    PresentedGroup group;
    GroupMap inclusion;
};

inline KernelResult kernel_with_inclusion(const GroupMap& f)
{
    Matrix lattice = preimage_lattice(f.matrix(), f.target().relations());
    PresentedGroup k = quotient_of_lattice(f.source().names(), lattice, f.source().relations());
    return {k, GroupMap(k, f.source(), lattice)};
}

inline PresentedGroup kernel(const GroupMap& f) { return kernel_with_inclusion(f).group; }

inline PresentedGroup cokernel(const GroupMap& f)
{
    std::vector<std::string> names;
    for (const auto& n : f.target().names())
        names.push_back(n + " mod im");
    return PresentedGroup(std::move(names), hconcat(f.target().relations(), f.matrix()));
}

/// ker(g) / im(f) for A --f--> B --g--> C; g∘f must vanish.
inline PresentedGroup homology_at(const GroupMap& f, const GroupMap& g)
{
    if (f.target().generator_count() != g.source().generator_count())
        throw std::invalid_argument("homology_at: maps are not composable");
    if (!compose(g, f).is_zero())
        throw ComputationError("homology_at: composite is nonzero (d∘d ≠ 0)");
    Matrix lattice = preimage_lattice(g.matrix(), g.target().relations());
    return quotient_of_lattice(g.source().names(), lattice, hconcat(f.matrix(), g.source().relations()));
}

/// Solve incl · c ≡ y modulo the target's relations; used to push elements into subgroups.
inline std::optional<std::vector<Integer>> lift_through(const GroupMap& incl, const std::vector<Integer>& y)
{
    Matrix system = hconcat(incl.matrix(), incl.target().relations());
    IntegerSolver solver(system);
    auto sol = solver.solve(y);
    if (!sol)
        return std::nullopt;
    sol->resize(incl.source().generator_count());
    return sol;
}

/// Hom(S, T) = 0 test on normal forms.
inline bool hom_vanishes(const NormalForm& s, const NormalForm& t)
{
    if (s.is_zero() || t.is_zero())
        return true;
    if (s.free_rank)
        return false;
    for (const auto& a : s.torsion)
        for (const auto& b : t.torsion)
            if (gcd(a, b) != 1)
                return false;
    return true;
}

}  // namespace ess
