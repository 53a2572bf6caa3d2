#pragma once

#include "ess/matrix.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ess {

/// James' function: #{s ∈ (0, n] : s ≡ 0, 1, 2, 4 mod 8}.
inline std::int64_t james_phi(std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("james_phi: n must be at least 1");
    const std::int64_t full = n / 8, rest = n % 8;
    std::int64_t partial = 0;
    for (std::int64_t r : {1, 2, 4})
        partial += r <= rest;
    return 4 * full + partial;
}

inline Integer pow2(std::int64_t e)
{
    if (e < 0)
        throw std::invalid_argument("pow2: negative exponent");
    Integer x = 1;
    x <<= static_cast<unsigned>(e);
    return x;
}

/// ℙ(nρ) immerses in 2^{φ(2n-1)}ρ; returns the multiple of ρ.
inline Integer immersion_target(std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("immersion_target: n must be at least 1");
    return pow2(james_phi(2 * n - 1));
}

/// The bound from the order 2ⁿ of K𝐑⁰(ℙ(nρ)₊) alone.
inline Integer crude_immersion_target(std::int64_t n)
{
    if (n < 0)
        throw std::invalid_argument("crude_immersion_target: n must be nonnegative");
    return pow2(n);
}

struct CancellationCheck {
    bool total = false;   // rank ξ > dim M + 1
    bool plus = false;    // rank ξ⁺ > dim M^{C₂} + 1
    bool minus = false;   // rank ξ⁻ > dim M^{C₂} + 1
    std::vector<std::string> detail;
    bool ok() const { return total && plus && minus; }
};

inline CancellationCheck cancellation_check(const Integer& rank_total, const Integer& rank_plus, const Integer& rank_minus,
                                            const Integer& dim_m, const Integer& dim_fixed)
{
    CancellationCheck c;
    c.total = rank_total > dim_m + 1;
    c.plus = rank_plus > dim_fixed + 1;
    c.minus = rank_minus > dim_fixed + 1;
    auto line = [](const char* what, const Integer& l, const Integer& r, bool ok) {
        return std::string(what) + ": " + l.str() + (ok ? " > " : " <= ") + r.str();
    };
    c.detail = {line("rank", rank_total, dim_m + 1, c.total), line("rank+", rank_plus, dim_fixed + 1, c.plus),
                line("rank-", rank_minus, dim_fixed + 1, c.minus)};
    return c;
}

/// The ξ-instance: 2ⁿ copies of ξ_ρ over ℙ(nρ) split as 2ⁿ⁺¹ = 2ⁿ + 2ⁿ, with dim ℙ(nρ) = 2n - 1
/// and dim ℙ(nρ)^{C₂} = n - 1.
inline CancellationCheck xi_cancellation(std::int64_t n)
{
    if (n < 1)
        throw std::invalid_argument("xi_cancellation: n must be at least 1");
    return cancellation_check(pow2(n + 1), pow2(n), pow2(n), 2 * n - 1, n - 1);
}

struct ImmersionReport {
    std::int64_t n = 0;
    std::int64_t phi_2n_minus_1 = 0;
    Integer kr_torsion_order;        // 2ⁿ
    Integer koc2_torsion_upper;      // 2^{φ(2n-1)}
    Integer koc2_torsion_lower;      // 2^{φ(2n-1)-1}
    Integer immersion_target;        // multiple of ρ
    Integer crude_target;
    CancellationCheck cancellation;
    Integer periodicity_exponent;    // 2^{φ(2n-1)}
};

inline ImmersionReport immersion_report(std::int64_t n)
{
    ImmersionReport r;
    r.n = n;
    r.phi_2n_minus_1 = james_phi(2 * n - 1);
    r.kr_torsion_order = pow2(n);
    r.koc2_torsion_upper = pow2(r.phi_2n_minus_1);
    r.koc2_torsion_lower = pow2(r.phi_2n_minus_1 - 1);
    r.immersion_target = immersion_target(n);
    r.crude_target = crude_immersion_target(n);
    r.cancellation = xi_cancellation(n);
    r.periodicity_exponent = r.koc2_torsion_upper;
    return r;
}

/// Stunted projective space ℙ_{bottom ρ}^{top ρ} (Thom space of bottom·ξ_ρ over ℙ((top-bottom)ρ)).
struct StuntedProjective {
    Integer bottom;
    Integer top;
    std::string label() const { return "P_{" + bottom.str() + "rho}^{" + top.str() + "rho}"; }
};

struct Periodicity {
    Integer shift;   // Σ^{shift ρ}
    StuntedProjective source, target;
};

/// Σ^{2^{φ(2n-1)}ρ} ℙ_{kρ}^{(k+n)ρ} ≃ ℙ_{(k+2^{φ(2n-1)})ρ}^{(k+2^{φ(2n-1)}+n)ρ}.
inline Periodicity james_periodicity(std::int64_t n, std::int64_t k)
{
    if (n <= 1)
        throw std::invalid_argument("james_periodicity: n must be greater than 1");
    Periodicity p;
    p.shift = pow2(james_phi(2 * n - 1));
    p.source = {Integer(k), Integer(k + n)};
    p.target = {Integer(k) + p.shift, Integer(k + n) + p.shift};
    return p;
}

}  // namespace ess
