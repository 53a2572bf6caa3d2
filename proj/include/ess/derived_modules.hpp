#pragma once

#include "ess/coefficients.hpp"

#include <functional>
#include <optional>

namespace ess {

/// |d₃ α| = |α| - (2,1) for a coefficient α; the v̄₁ factor carries the rest.
inline const RODegree d3_shift{2, 1};

/// Matrix of a monomial-wise rule between two degrees of a ring, rows indexed by the target basis.
inline Matrix monomial_matrix(const GradedRing& src_ring, const RODegree& src, const GradedRing& tgt_ring,
                              const RODegree& tgt,
                              const std::function<std::optional<std::pair<Integer, Monomial>>(const Monomial&)>& f)
{
    auto sb = src_ring.basis(src);
    auto tb = tgt_ring.basis(tgt);
    Matrix m(tb.size(), sb.size());
    for (std::size_t j = 0; j < sb.size(); ++j) {
        auto img = f(sb[j].monomial);
        if (!img)
            continue;
        bool found = false;
        for (std::size_t i = 0; i < tb.size(); ++i)
            if (tb[i].monomial == img->second) {
                m(i, j) += img->first;
                found = true;
            }
        if (!found)
            throw ComputationError("monomial_matrix: image of " + src_ring.label(sb[j].monomial) + " not in degree " +
                                   to_string(tgt));
    }
    return m;
}

/// d₃ : R_W → R_{W-(2,1)} on the coefficient ring (H𝐙̲ or its a_σ-localization).
inline GroupMap d3_map(const GradedRing& ring, const RODegree& w)
{
    return GroupMap(ring.group_at(w), ring.group_at(w - d3_shift),
                    monomial_matrix(ring, w, ring, w - d3_shift, [](const Monomial& m) { return slice_d3(m); }));
}

/// Mod 2 reduction H𝐙̲_W → H𝔽̲₂_W.
inline GroupMap reduction_map(const RODegree& w)
{
    const GradedRing hz(RingKind::HZ), hf2(RingKind::HF2);
    return GroupMap(hz.group_at(w), hf2.group_at(w),
                    monomial_matrix(hz, w, hf2, w, [](const Monomial& m) {
                        return std::optional<std::pair<Integer, Monomial>>({1, reduce_mod2(m)});
                    }));
}

enum class ModuleKind { K, C, Dbar, Cbar, Kbar };

inline std::string to_string(ModuleKind k)
{
    switch (k) {
    case ModuleKind::K: return "K";
    case ModuleKind::C: return "C";
    case ModuleKind::Dbar: return "Dbar";
    case ModuleKind::Cbar: return "Cbar";
    case ModuleKind::Kbar: return "Kbar";
    }
    return "?";
}

/// K = ker(×2) and C = coker(×2) on a coefficient ring, degreewise, together with their
/// d₃-homology D̄, C̄, K̄ (the latter three at a given v̄₁-power).
class DerivedModules {
public:
    explicit DerivedModules(RingKind base = RingKind::HZ) : ring_(base) {}

    const GradedRing& ring() const { return ring_; }

    GroupMap times_two(const RODegree& w) const { return GroupMap::multiplication(ring_.group_at(w), 2); }

    KernelResult k_with_inclusion(const RODegree& w) const { return kernel_with_inclusion(times_two(w)); }
    PresentedGroup K(const RODegree& w) const { return k_with_inclusion(w).group; }
    PresentedGroup C(const RODegree& w) const { return cokernel(times_two(w)); }

    /// d₃ on C: the same matrix as on the ring, read on cokernel presentations.
    GroupMap d3_C(const RODegree& w) const
    {
        return GroupMap(C(w), C(w - d3_shift), d3_map(ring_, w).matrix());
    }

    /// d₃ on K, obtained by lifting d₃ of the included generators back into K.
    GroupMap d3_K(const RODegree& w) const
    {
        auto src = k_with_inclusion(w);
        auto tgt = k_with_inclusion(w - d3_shift);
        GroupMap d = compose(d3_map(ring_, w), src.inclusion);
        Matrix m(tgt.group.generator_count(), src.group.generator_count());
        for (std::size_t j = 0; j < src.group.generator_count(); ++j) {
            auto lift = lift_through(tgt.inclusion, d.matrix().column(j));
            if (!lift)
                throw ComputationError("d3 does not preserve K at " + to_string(w));
            for (std::size_t i = 0; i < lift->size(); ++i)
                m(i, j) = (*lift)[i];
        }
        return GroupMap(src.group, tgt.group, m);
    }

    GroupMap d3(ModuleKind k, const RODegree& w) const
    {
        switch (k) {
        case ModuleKind::Dbar: return d3_map(ring_, w);
        case ModuleKind::Cbar: return d3_C(w);
        case ModuleKind::Kbar: return d3_K(w);
        default: throw std::invalid_argument("d3: not a barred module");
        }
    }

    /// Homology of (M[v̄₁], d₃) at α·v̄₁^m with |α| = w. At m = 0 nothing comes in.
    PresentedGroup bar(ModuleKind k, const RODegree& w, std::int64_t m) const
    {
        GroupMap out = d3(k, w);
        if (m == 0)
            return kernel(out);
        return homology_at(d3(k, w + d3_shift), out);
    }

    PresentedGroup group_at(ModuleKind k, const RODegree& w, std::int64_t m = 0) const
    {
        switch (k) {
        case ModuleKind::K: return K(w);
        case ModuleKind::C: return C(w);
        default: return bar(k, w, m);
        }
    }

    /// Module action of a ring monomial on K or C: K_w → K_{w+|x|}, C_w → C_{w+|x|}.
    GroupMap action(ModuleKind k, const Monomial& x, const RODegree& w) const
    {
        const RODegree t = w + ring_.degree(x);
        Matrix mult = monomial_matrix(ring_, w, ring_, t, [&](const Monomial& y) -> std::optional<std::pair<Integer, Monomial>> {
            Product p = ring_.multiply(x, y);
            if (p.is_zero())
                return std::nullopt;
            return std::pair{p.coefficient, p.monomial};
        });
        if (k == ModuleKind::C)
            return GroupMap(C(w), C(t), mult);
        if (k != ModuleKind::K)
            throw std::invalid_argument("action: only K and C carry an explicit action");
        auto src = k_with_inclusion(w);
        auto tgt = k_with_inclusion(t);
        Matrix incl_image = mult * src.inclusion.matrix();
        Matrix m(tgt.group.generator_count(), src.group.generator_count());
        for (std::size_t j = 0; j < incl_image.cols(); ++j) {
            auto lift = lift_through(tgt.inclusion, incl_image.column(j));
            if (!lift)
                throw ComputationError("action does not preserve K");
            for (std::size_t i = 0; i < lift->size(); ++i)
                m(i, j) = (*lift)[i];
        }
        return GroupMap(src.group, tgt.group, m);
    }

    /// Whether K_w → H𝐙̲_w → H𝔽̲₂_w is injective.
    bool k_injects_into_hf2(const RODegree& w) const
    {
        auto k = k_with_inclusion(w);
        return kernel(compose(reduction_map(w), k.inclusion)).is_zero();
    }

private:
    GradedRing ring_;
};

}  // namespace ess
