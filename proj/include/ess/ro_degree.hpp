#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>

namespace ess {

/// a + b·σ in RO(C2).
struct RODegree {
    std::int64_t a = 0;  // trivial part
    std::int64_t b = 0;  // sign part

    constexpr RODegree() = default;
    constexpr RODegree(std::int64_t trivial, std::int64_t sign) : a(trivial), b(sign) {}

    static constexpr RODegree zero() { return {0, 0}; }
    static constexpr RODegree one() { return {1, 0}; }
    static constexpr RODegree sigma() { return {0, 1}; }
    static constexpr RODegree rho() { return {1, 1}; }

    constexpr RODegree& operator+=(const RODegree& o)
    {
        a += o.a;
        b += o.b;
        return *this;
    }
    constexpr RODegree& operator-=(const RODegree& o)
    {
        a -= o.a;
        b -= o.b;
        return *this;
    }
    friend constexpr RODegree operator+(RODegree x, const RODegree& y) { return x += y; }
    friend constexpr RODegree operator-(RODegree x, const RODegree& y) { return x -= y; }
    friend constexpr RODegree operator-(const RODegree& x) { return {-x.a, -x.b}; }
    friend constexpr RODegree operator*(std::int64_t k, const RODegree& x) { return {k * x.a, k * x.b}; }

    friend constexpr auto operator<=>(const RODegree&, const RODegree&) = default;
};

constexpr std::int64_t underlying_degree(const RODegree& d) { return d.a + d.b; }
constexpr std::int64_t fixed_degree(const RODegree& d) { return d.a; }

inline std::string to_string(const RODegree& d)
{
    return "(" + std::to_string(d.a) + "," + std::to_string(d.b) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const RODegree& d) { return os << to_string(d); }

/// Rectangle of degrees plus a filtration bound. Nothing outside it is asserted.
struct DegreeWindow {
    std::int64_t a_min = -12, a_max = 12;
    std::int64_t b_min = -12, b_max = 12;
    std::int64_t filtration_max = 12;

    DegreeWindow() = default;
    DegreeWindow(std::int64_t amin, std::int64_t amax, std::int64_t bmin, std::int64_t bmax, std::int64_t fmax)
        : a_min(amin), a_max(amax), b_min(bmin), b_max(bmax), filtration_max(fmax)
    {
        if (a_min > a_max || b_min > b_max || filtration_max < 0)
            throw std::invalid_argument("DegreeWindow: empty range");
    }

    static DegreeWindow square(std::int64_t r, std::int64_t fmax) { return {-r, r, -r, r, fmax}; }

    bool contains(const RODegree& d) const { return d.a >= a_min && d.a <= a_max && d.b >= b_min && d.b <= b_max; }
    bool contains(std::int64_t filtration, const RODegree& d) const
    {
        return filtration >= 0 && filtration <= filtration_max && contains(d);
    }

    template <class F>
    void for_each(F&& f) const
    {
        for (std::int64_t a = a_min; a <= a_max; ++a)
            for (std::int64_t b = b_min; b <= b_max; ++b)
                f(RODegree{a, b});
    }

    friend bool operator==(const DegreeWindow&, const DegreeWindow&) = default;
};

}  // namespace ess

template <>
struct std::hash<ess::RODegree> {
    std::size_t operator()(const ess::RODegree& d) const noexcept
    {
        return std::hash<std::int64_t>{}(d.a * 1000003 + d.b);
    }
};
