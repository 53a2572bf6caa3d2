#pragma once

#include "ess/abelian.hpp"
#include "ess/ro_degree.hpp"

#include <algorithm>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

namespace ess {

enum class RingKind { HZ, HF2, kR, HZ_phi, kR_phi };

inline std::string to_string(RingKind k)
{
    switch (k) {
    case RingKind::HZ: return "HZ";
    case RingKind::HF2: return "HF2";
    case RingKind::kR: return "kR";
    case RingKind::HZ_phi: return "HZ_phi";
    case RingKind::kR_phi: return "kR_phi";
    }
    return "?";
}

inline std::optional<RingKind> ring_from_string(const std::string& s)
{
    for (RingKind k : {RingKind::HZ, RingKind::HF2, RingKind::kR, RingKind::HZ_phi, RingKind::kR_phi})
        if (to_string(k) == s)
            return k;
    return std::nullopt;
}

// Families of basis monomials. Field meaning depends on the family:
//   Positive  HZ: u_{2σ}^u a^a      HF2: u_σ^u a^a      kR: (2u_{2σ})^e u_{4σ}^u a^a v̄^v
//             HZ_phi: u_{2σ}^u a^a (a ∈ Z)              kR_phi: u_{4σ}^u a^a (a ∈ Z)
//   Theta2    HZ: θ₂/u_{2σ}^u
//   Theta3    HZ: θ₃/(u_{2σ}^u a^a)
//   ThetaF2   HF2: θ/(u_σ^u a^a), |θ| = -2+2σ
//   ZTower    kR: 2θ₂/(2u_{2σ})^u · v̄^v  (shown as θ₂v̄/u_{4σ}^{u/2} · v̄^{v-1} when u even, u>0, v>0)
//   Theta5    kR: θ₅/(u_{4σ}^u a^a)
enum class Family { Positive, Theta2, Theta3, ThetaF2, ZTower, Theta5 };

struct Monomial {
    Family family = Family::Positive;
    std::int64_t u = 0;
    std::int64_t a = 0;
    std::int64_t e = 0;
    std::int64_t v = 0;

    static Monomial one() { return {}; }
    friend auto operator<=>(const Monomial&, const Monomial&) = default;
};

inline Monomial positive(std::int64_t u, std::int64_t a, std::int64_t e = 0, std::int64_t v = 0)
{
    return {Family::Positive, u, a, e, v};
}

namespace detail {

inline std::string power(const std::string& base, std::int64_t k)
{
    if (k == 0)
        return "";
    if (k == 1)
        return base;
    return base + "^" + std::to_string(k);
}

inline std::string join_factors(std::initializer_list<std::string> parts)
{
    std::string out;
    for (const auto& p : parts) {
        if (p.empty())
            continue;
        if (!out.empty())
            out += " ";
        out += p;
    }
    return out;
}

inline std::string divided(const std::string& top, std::initializer_list<std::string> parts)
{
    std::string den = join_factors(parts);
    if (den.empty())
        return top;
    if (den.find(' ') != std::string::npos)
        return top + "/(" + den + ")";
    return top + "/" + den;
}

inline std::int64_t floor_div(std::int64_t x, std::int64_t d)
{
    std::int64_t q = x / d;
    if ((x % d != 0) && ((x < 0) != (d < 0)))
        --q;
    return q;
}

}  // namespace detail

/// A basis element of a coefficient ring in one degree: the monomial and its additive order (0 = Z).
struct BasisElement {
    Monomial monomial;
    Integer order;
};

/// Result of multiplying two basis monomials.
/// flag is empty for products fixed by stated rules; otherwise it names why the value was chosen.
struct Product {
    Integer coefficient = 0;
    Monomial monomial{};
    std::string flag;

    bool is_zero() const { return coefficient == 0; }
};

/// A coefficient ring given by explicit degreewise tables.
class GradedRing {
public:
    explicit GradedRing(RingKind kind) : kind_(kind) {}

    RingKind kind() const { return kind_; }
    std::string name() const { return to_string(kind_); }

    /// Whether the ring is an F2-algebra (all orders 2).
    bool is_f2() const { return kind_ == RingKind::HF2 || kind_ == RingKind::HZ_phi || kind_ == RingKind::kR_phi; }

    RODegree degree(const Monomial& m) const
    {
        switch (kind_) {
        case RingKind::HZ:
        case RingKind::HZ_phi:
            switch (m.family) {
            case Family::Positive: return {2 * m.u, -2 * m.u - m.a};
            case Family::Theta2: return {-2 - 2 * m.u, 2 + 2 * m.u};
            case Family::Theta3: return {-3 - 2 * m.u, 3 + 2 * m.u + m.a};
            default: break;
            }
            break;
        case RingKind::HF2:
            if (m.family == Family::Positive)
                return {m.u, -m.u - m.a};
            if (m.family == Family::ThetaF2)
                return {-2 - m.u, 2 + m.u + m.a};
            break;
        case RingKind::kR:
            switch (m.family) {
            case Family::Positive: return {2 * m.e + 4 * m.u + m.v, -2 * m.e - 4 * m.u - m.a + m.v};
            case Family::ZTower: return {-2 - 2 * m.u + m.v, 2 + 2 * m.u + m.v};
            case Family::Theta5: return {-5 - 4 * m.u, 5 + 4 * m.u + m.a};
            default: break;
            }
            break;
        case RingKind::kR_phi:
            if (m.family == Family::Positive)
                return {4 * m.u, -4 * m.u - m.a};
            break;
        }
        throw std::invalid_argument("GradedRing::degree: monomial family not in ring " + name());
    }

    std::string label(const Monomial& m) const
    {
        using detail::divided;
        using detail::join_factors;
        using detail::power;
        switch (m.family) {
        case Family::Positive: {
            std::string s;
            switch (kind_) {
            case RingKind::HZ:
            case RingKind::HZ_phi: s = join_factors({power("u", m.u), power("a", m.a)}); break;
            case RingKind::HF2: s = join_factors({power("us", m.u), power("a", m.a)}); break;
            case RingKind::kR:
                s = join_factors({power("(2u)", m.e), power("u4", m.u), power("a", m.a), power("vbar", m.v)});
                break;
            case RingKind::kR_phi: s = join_factors({power("u4", m.u), power("a", m.a)}); break;
            }
            return s.empty() ? "1" : s;
        }
        case Family::Theta2: return divided("theta2", {power("u", m.u)});
        case Family::Theta3: return divided("theta3", {power("u", m.u), power("a", m.a)});
        case Family::ThetaF2: return divided("theta", {power("us", m.u), power("a", m.a)});
        case Family::ZTower:
            if (m.u > 0 && m.u % 2 == 0 && m.v > 0)
                return join_factors({divided("theta2 vbar", {power("u4", m.u / 2)}), power("vbar", m.v - 1)});
            return join_factors({divided("2theta2", {power("(2u)", m.u)}), power("vbar", m.v)});
        case Family::Theta5: return divided("theta5", {power("u4", m.u), power("a", m.a)});
        }
        return "?";
    }

    /// Basis monomials of the group in degree d, in a fixed order.
    std::vector<BasisElement> basis(const RODegree& d) const
    {
        std::vector<BasisElement> out;
        const std::int64_t x = d.a, y = d.b;
        switch (kind_) {
        case RingKind::HZ:
            if (x >= 0 && x % 2 == 0 && -y - x >= 0)
                out.push_back({positive(x / 2, -y - x), -y - x == 0 ? Integer(0) : Integer(2)});
            if (x <= -2 && x % 2 == 0 && y == -x)
                out.push_back({{Family::Theta2, (-2 - x) / 2, 0, 0, 0}, 0});
            if (x <= -3 && (-x) % 2 == 1 && x + y >= 0)
                out.push_back({{Family::Theta3, (-3 - x) / 2, x + y, 0, 0}, 2});
            break;
        case RingKind::HF2:
            if (x >= 0 && -y - x >= 0)
                out.push_back({positive(x, -y - x), 2});
            if (x <= -2 && x + y >= 0)
                out.push_back({{Family::ThetaF2, -2 - x, x + y, 0, 0}, 2});
            break;
        case RingKind::kR:
            for (std::int64_t e = 0; e <= 1; ++e)
                for (std::int64_t f = 0; 2 * e + 4 * f <= x; ++f) {
                    const std::int64_t v = x - 2 * e - 4 * f;
                    const std::int64_t a = v - y - 2 * e - 4 * f;
                    if (a < 0 || (a >= 3 && v > 0))
                        continue;
                    out.push_back({positive(f, a, e, v), a == 0 ? Integer(0) : Integer(2)});
                }
            if ((x + y) % 2 == 0 && x + y >= 0 && (y - x - 4) >= 0 && (y - x - 4) % 4 == 0)
                out.push_back({{Family::ZTower, (y - x - 4) / 4, 0, 0, (x + y) / 2}, 0});
            if (x <= -5 && (-5 - x) % 4 == 0 && x + y >= 0)
                out.push_back({{Family::Theta5, (-5 - x) / 4, x + y, 0, 0}, 2});
            break;
        case RingKind::HZ_phi:
            if (x >= 0 && x % 2 == 0)
                out.push_back({positive(x / 2, -y - x), 2});
            break;
        case RingKind::kR_phi:
            if (x >= 0 && x % 4 == 0)
                out.push_back({positive(x / 4, -y - x), 2});
            break;
        }
        return out;
    }

    PresentedGroup group_at(const RODegree& d) const
    {
        auto b = basis(d);
        std::vector<std::string> names;
        std::vector<Integer> orders;
        for (const auto& x : b) {
            names.push_back(label(x.monomial));
            orders.push_back(x.order);
        }
        return PresentedGroup::diagonal(std::move(names), orders);
    }

    Integer order_of(const Monomial& m) const
    {
        for (const auto& b : basis(degree(m)))
            if (b.monomial == m)
                return b.order;
        throw std::invalid_argument("GradedRing::order_of: not a basis monomial: " + label(m));
    }

    bool is_basis(const Monomial& m) const
    {
        try {
            for (const auto& b : basis(degree(m)))
                if (b.monomial == m)
                    return true;
        }
        catch (const std::invalid_argument&) {
        }
        return false;
    }

    Product multiply(const Monomial& x, const Monomial& y) const
    {
        const bool xp = x.family == Family::Positive, yp = y.family == Family::Positive;
        if (!xp && yp)
            return multiply(y, x);
        Product p = xp && yp ? multiply_positive(x, y) : xp ? act(x, y) : Product{0, {}, ""};
        if (!xp && !yp)
            return p;  // products in the negative cone vanish
        if (!p.is_zero()) {
            if (!is_basis(p.monomial))
                throw ComputationError("multiply: product left the basis in " + name());
            if (order_of(p.monomial) != 0)
                p.coefficient %= order_of(p.monomial);
            if (p.coefficient == 0)
                p.monomial = {};
        }
        return p;
    }

private:
    Product multiply_positive(const Monomial& x, const Monomial& y) const
    {
        Monomial m = positive(x.u + y.u, x.a + y.a, x.e + y.e, x.v + y.v);
        if (kind_ == RingKind::kR) {
            if (m.e >= 2) {  // (2u_{2σ})^2 = u_{4σ}
                m.u += m.e / 2;
                m.e %= 2;
            }
            if (m.a >= 3 && m.v > 0)
                return {0, {}, ""};
        }
        if (!is_basis(m))
            return {0, {}, ""};
        return {1, m, ""};
    }

    // Positive-cone monomial p acting on a negative-cone monomial t.
    Product act(const Monomial& p, const Monomial& t) const
    {
        switch (t.family) {
        case Family::Theta2:
            if (p.a > 0)
                return {0, {}, "oracle: target degree carries no class"};
            if (p.u > t.u)
                return {0, {}, "audit: u-multiplication off the end of the theta2 tower, set to zero"};
            return {1, {Family::Theta2, t.u - p.u, 0, 0, 0}, ""};
        case Family::Theta3:
            if (p.u > t.u || p.a > t.a)
                return {0, {}, ""};
            return {1, {Family::Theta3, t.u - p.u, t.a - p.a, 0, 0}, ""};
        case Family::ThetaF2:
            if (p.u > t.u || p.a > t.a)
                return {0, {}, ""};
            return {1, {Family::ThetaF2, t.u - p.u, t.a - p.a, 0, 0}, ""};
        case Family::ZTower: {
            if (p.a > 0)
                return {0, {}, "audit: a on a Z-tower of kR, set to zero"};
            const std::int64_t i = t.u - p.e - 2 * p.u;
            if (i < 0)
                return {0, {}, "audit: u-multiplication off the end of a Z-tower of kR, set to zero"};
            return {1, {Family::ZTower, i, 0, 0, t.v + p.v}, ""};
        }
        case Family::Theta5:
            if (p.e > 0 || p.v > 0)
                return {0, {}, "unknown: product with theta5 not stated, set to zero"};
            if (p.u > t.u || p.a > t.a)
                return {0, {}, ""};
            return {1, {Family::Theta5, t.u - p.u, t.a - p.a, 0, 0}, ""};
        default: break;
        }
        return {0, {}, ""};
    }

    RingKind kind_;
};

/// Slice d₃ on H𝐙̲_★ (resp. H𝐙̲^Φ_★), from d₃(u_{2σ}) = a³v̄₁, d₃(a_σ) = 0 and the Leibniz rule.
/// Returns the coefficient part of the target; the target carries one more v̄₁.
/// On θ₃/(u^j a^k) the recursion d(x) = d(u)·(x/u) + u·d(x/u) fixes the coefficient up to a
/// global choice of parity; survivors at odd j are the ones that match the θ₅ family of kR.
inline std::optional<std::pair<Integer, Monomial>> slice_d3(const Monomial& m)
{
    switch (m.family) {
    case Family::Positive: {
        // i·u^{i-1}a^{j+3} lands in 2-torsion, so only odd i survive.
        if (m.u % 2 == 0)
            return std::nullopt;
        return std::pair{Integer(1), positive(m.u - 1, m.a + 3)};
    }
    case Family::Theta3: {
        if ((m.u + 1) % 2 == 0 || m.a < 3)
            return std::nullopt;
        return std::pair{Integer(1), Monomial{Family::Theta3, m.u + 1, m.a - 3, 0, 0}};
    }
    default: return std::nullopt;
    }
}

/// Mod 2 reduction H𝐙̲_★ → H𝔽̲₂_★ on basis monomials.
inline Monomial reduce_mod2(const Monomial& m)
{
    switch (m.family) {
    case Family::Positive: return positive(2 * m.u, m.a);
    case Family::Theta2: return {Family::ThetaF2, 2 * m.u, 0, 0, 0};
    case Family::Theta3: return {Family::ThetaF2, 2 * m.u + 1, m.a, 0, 0};
    default: break;
    }
    throw std::invalid_argument("reduce_mod2: not an HZ monomial");
}

/// Linearized φ: kR_★ / H𝐙̲_★ → a-localization. Negative-cone classes die; positive ones survive.
inline std::optional<Monomial> localize(const Monomial& m)
{
    if (m.family != Family::Positive)
        return std::nullopt;
    return m;
}

struct OracleResult {
    bool supported = false;
    PresentedGroup group;
};

/// π_{a+bσ} H𝐙̲ computed from the cellular chain complex of a representation sphere.
/// S^{nσ} has one fixed 0-cell and one free cell in each dimension 1..n; with constant Z
/// coefficients the fixed-point chains are Z in each degree with d₁ = 2 (transfer) and
/// d_k = 1 + (-1)^k for k ≥ 2. Negative sign parts use homology of S^{-bσ}, positive ones
/// cohomology of S^{bσ} in degree -a.
inline OracleResult chain_oracle_HZ(const RODegree& d, std::int64_t reach = 64)
{
    auto boundary = [](std::int64_t k) -> long { return k == 1 ? 2 : (k % 2 == 0 ? 0 : 2); };
    OracleResult r;
    const std::int64_t n = d.b < 0 ? -d.b : d.b;
    if (n > reach)
        return r;
    r.supported = true;
    auto one = [](long x) { return Matrix{{x}}; };
    PresentedGroup z = PresentedGroup::free({"c"});
    if (d.b == 0) {
        r.group = d.a == 0 ? z : PresentedGroup::zero();
        return r;
    }
    if (d.b < 0) {
        const std::int64_t k = d.a;
        if (k < 0 || k > n) {
            r.group = PresentedGroup::zero();
            return r;
        }
        // C_{k+1} -> C_k -> C_{k-1}
        GroupMap in = k + 1 <= n ? GroupMap(z, z, one(boundary(k + 1))) : GroupMap(PresentedGroup::zero(), z, Matrix(1, 0));
        GroupMap out = k >= 1 ? GroupMap(z, z, one(boundary(k))) : GroupMap(z, PresentedGroup::zero(), Matrix(0, 1));
        r.group = homology_at(in, out);
        return r;
    }
    const std::int64_t k = -d.a;
    if (k < 0 || k > n) {
        r.group = PresentedGroup::zero();
        return r;
    }
    auto coboundary = [&](std::int64_t from) -> long { return from == 0 ? 1 : boundary(from + 1); };
    GroupMap in = k >= 1 ? GroupMap(z, z, one(coboundary(k - 1))) : GroupMap(PresentedGroup::zero(), z, Matrix(1, 0));
    GroupMap out = k + 1 <= n ? GroupMap(z, z, one(coboundary(k))) : GroupMap(z, PresentedGroup::zero(), Matrix(0, 1));
    r.group = homology_at(in, out);
    return r;
}

/// Generators of a ring, with their degrees, for table serialization.
inline std::vector<std::pair<std::string, RODegree>> ring_generators(RingKind k)
{
    switch (k) {
    case RingKind::HZ:
        return {{"u", {2, -2}}, {"a", {0, -1}}, {"theta2", {-2, 2}}, {"theta3", {-3, 3}}};
    case RingKind::HF2: return {{"us", {1, -1}}, {"a", {0, -1}}, {"theta", {-2, 2}}};
    case RingKind::kR:
        return {{"2u", {2, -2}}, {"u4", {4, -4}}, {"a", {0, -1}}, {"vbar", {1, 1}},
                {"2theta2", {-2, 2}}, {"theta5", {-5, 5}}, {"theta2 vbar", {-1, 3}}};
    case RingKind::HZ_phi: return {{"u", {2, -2}}, {"a", {0, -1}}, {"a^-1", {0, 1}}};
    case RingKind::kR_phi: return {{"u4", {4, -4}}, {"a", {0, -1}}, {"a^-1", {0, 1}}};
    }
    return {};
}

}  // namespace ess
