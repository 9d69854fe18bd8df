#pragma once

// Exact elements of PSL(2,Z) with overflow-checked arithmetic.

#include <compare>
#include <string>

#include "supnorm/errors.hpp"
#include "supnorm/hyperbolic.hpp"

namespace supnorm {

struct IntegerMoebius {
    long long a = 1, b = 0, c = 0, d = 1;

    /// Checked constructor: ad - bc must be exactly 1. The sign is normalized
    /// so that c > 0, or c = 0 and d > 0.
    static IntegerMoebius make(long long a, long long b, long long c, long long d)
    {
        long long ad = 0, bc = 0, det = 0;
        if (__builtin_mul_overflow(a, d, &ad) || __builtin_mul_overflow(b, c, &bc) || __builtin_sub_overflow(ad, bc, &det))
            throw DomainError("integer matrix entries overflow");
        if (det != 1)
            throw DomainError("integer matrix must have determinant 1");
        IntegerMoebius g{a, b, c, d};
        if (c < 0 || (c == 0 && d < 0))
            g = {-a, -b, -c, -d};
        return g;
    }

    static IntegerMoebius identity() { return {1, 0, 0, 1}; }
    static IntegerMoebius translation(long long n) { return {1, n, 0, 1}; }
    static IntegerMoebius inversion() { return make(0, -1, 1, 0); }

    IntegerMoebius inverse() const { return make(d, -b, -c, a); }

    IntegerMoebius operator*(const IntegerMoebius& o) const
    {
        auto dot = [](long long p, long long q, long long r, long long s) {
            long long x = 0, y = 0, z = 0;
            if (__builtin_mul_overflow(p, q, &x) || __builtin_mul_overflow(r, s, &y) || __builtin_add_overflow(x, y, &z))
                throw DomainError("integer matrix product overflows");
            return z;
        };
        return make(dot(a, o.a, b, o.c), dot(a, o.b, b, o.d), dot(c, o.a, d, o.c), dot(c, o.b, d, o.d));
    }

    Point apply(const Point& z) const
    {
        return to_moebius().apply(z);
    }
    Point operator()(const Point& z) const { return apply(z); }

    Moebius to_moebius() const
    {
        return Moebius(static_cast<double>(a), static_cast<double>(b), static_cast<double>(c), static_cast<double>(d));
    }

    std::string str() const
    {
        return "(" + std::to_string(a) + "," + std::to_string(b) + ";" + std::to_string(c) + "," + std::to_string(d) + ")";
    }

    auto operator<=>(const IntegerMoebius&) const = default;
};

}  // namespace supnorm
