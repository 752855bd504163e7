#pragma once

#include <array>
#include <bit>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

namespace isolab {

// All edge lengths are integers premultiplied by the per-space scale factor,
// so every distance computed anywhere is exact.
using Scaled = std::int64_t;
using Measure = std::int64_t;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BudgetExceeded : Error {
    using Error::Error;
};
struct TooLarge : Error {
    using Error::Error;
};
struct InvalidScaling : Error {
    using Error::Error;
};
struct OutOfRange : Error {
    using Error::Error;
};
struct EmptyCurve : Error {
    using Error::Error;
};
struct EmptyAtT : Error {
    using Error::Error;
};

/// Vertex-count cap for search operations over implicit graphs.
/// Operations throw BudgetExceeded instead of truncating silently.
struct Budget {
    std::size_t max_vertices = 4'000'000;
};

/// Structural vertex identity: up to four lattice coordinates plus an integer
/// tag distinguishing copies and subdivision vertices in generated families.
struct VertexId {
    std::array<std::int64_t, 4> coords{0, 0, 0, 0};
    std::int32_t tag = 0;

    friend auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline VertexId vx(std::int64_t x) {
    return VertexId{{x, 0, 0, 0}, 0};
}
inline VertexId vx(std::int64_t x, std::int64_t y, std::int32_t tag = 0) {
    return VertexId{{x, y, 0, 0}, tag};
}
inline VertexId vx4(std::int64_t x, std::int64_t y, std::int64_t z, std::int64_t w, std::int32_t tag = 0) {
    return VertexId{{x, y, z, w}, tag};
}

inline std::string to_string(const VertexId& v) {
    std::string s = "(";
    for (int i = 0; i < 4; ++i) {
        if (i) s += ",";
        s += std::to_string(v.coords[i]);
    }
    s += ";" + std::to_string(v.tag) + ")";
    return s;
}

struct VertexHash {
    static std::uint64_t mix(std::uint64_t x) noexcept {
        x += 0x9e3779b97f4a7c15ull;
        x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
        x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
        return x ^ (x >> 31);
    }
    std::size_t operator()(const VertexId& v) const noexcept {
        std::uint64_t h = mix(static_cast<std::uint64_t>(static_cast<std::int64_t>(v.tag)));
        for (std::int64_t c : v.coords) h = mix(h ^ static_cast<std::uint64_t>(c));
        return static_cast<std::size_t>(h);
    }
};

/// Exact rational with positive denominator; comparisons never touch floating point.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    static Rational of(std::int64_t n, std::int64_t d) {
        if (d == 0) throw Error("rational with zero denominator");
        if (d < 0) {
            n = -n;
            d = -d;
        }
        const std::int64_t g = std::gcd(n < 0 ? -n : n, d);
        if (g > 1) {
            n /= g;
            d /= g;
        }
        return Rational{n, d};
    }
    static Rational whole(std::int64_t n) { return Rational{n, 1}; }

    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }

    Rational times(const Rational& o) const {
        const __int128 n = static_cast<__int128>(num) * o.num;
        const __int128 d = static_cast<__int128>(den) * o.den;
        __int128 g = gcd128(n < 0 ? -n : n, d);
        if (g == 0) g = 1;
        const __int128 rn = n / g, rd = d / g;
        if (rn > INT64_MAX || rn < INT64_MIN || rd > INT64_MAX) throw Error("rational overflow");
        return Rational{static_cast<std::int64_t>(rn), static_cast<std::int64_t>(rd)};
    }

    friend bool operator==(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den == static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator<=(const Rational& a, const Rational& b) {
        return static_cast<__int128>(a.num) * b.den <= static_cast<__int128>(b.num) * a.den;
    }
    friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
    friend bool operator>=(const Rational& a, const Rational& b) { return b <= a; }

private:
    static __int128 gcd128(__int128 a, __int128 b) {
        while (b != 0) {
            const __int128 t = a % b;
            a = b;
            b = t;
        }
        return a;
    }
};

/// Seeded linear-congruential stream for reproducible sampling.
class Lcg {
public:
    explicit Lcg(std::uint64_t seed = 0x4d595df4d0f33173ull) : state_(seed) {}

    std::uint64_t next() {
        state_ = state_ * 6364136223846793005ull + 1442695040888963407ull;
        std::uint64_t x = state_;
        x ^= x >> 33;
        return x;
    }
    std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
    std::int64_t range(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }

private:
    std::uint64_t state_;
};

inline std::int64_t isqrt_floor(std::int64_t n) {
    if (n < 0) throw Error("isqrt of negative");
    if (n < 2) return n;
    std::int64_t x = static_cast<std::int64_t>(std::sqrt(static_cast<double>(n)));
    while (x > 0 && x * x > n) --x;
    while ((x + 1) * (x + 1) <= n) ++x;
    return x;
}

inline std::int64_t ipow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > INT64_MAX / (base > 0 ? base : -base)) throw Error("ipow overflow");
        r *= base;
    }
    return r;
}

inline int log2_ceil(std::int64_t n) {
    if (n < 1) throw Error("log2_ceil of non-positive");
    int e = 0;
    std::int64_t p = 1;
    while (p < n) {
        p <<= 1;
        ++e;
    }
    return e;
}

}  // namespace isolab
