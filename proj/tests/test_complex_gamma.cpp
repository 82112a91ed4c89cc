#include <gtest/gtest.h>

#include <cmath>

#include "lapsum/complex_gamma.hpp"

using lapsum::cplx;

namespace {

double rel(cplx a, cplx b) { return std::abs(a - b) / std::abs(b); }

// reference values from mpmath at 30 digits
TEST(ComplexGamma, FrozenValues) {
    EXPECT_LT(rel(lapsum::rgamma({2.0, 1.0}), {1.2001760188136032501, -0.6305683777769214441}), 1e-13);
    EXPECT_LT(rel(lapsum::gamma({0.5, 1.5}), {0.1544309761869628434, -0.18052756337372853947}), 1e-13);
    EXPECT_LT(rel(lapsum::gamma({3.0, -2.0}), {-0.42263728631120216673, -0.87181425569650686075}), 1e-13);
    EXPECT_LT(rel(lapsum::gamma({-1.5, 0.5}), {0.93791666278788505097, 0.34920566814780486859}), 1e-12);
    EXPECT_LT(rel(lapsum::gamma(4.5), 11.631728396567448929), 1e-13);
}

TEST(ComplexGamma, IntegerAndHalfInteger) {
    double f = 1.0;
    for (int n = 1; n <= 15; ++n) {
        EXPECT_LT(rel(lapsum::gamma(static_cast<double>(n)), f), 1e-13) << n;
        f *= n;
    }
    EXPECT_LT(rel(lapsum::gamma(0.5), std::sqrt(lapsum::pi)), 1e-14);
}

TEST(ComplexGamma, RecurrenceOnStrip) {
    for (double re = 0.1; re <= 5.0; re += 0.3)
        for (double im = -2.0; im <= 2.0; im += 0.25) {
            const cplx z(re, im);
            EXPECT_LT(rel(lapsum::gamma(z + 1.0), z * lapsum::gamma(z)), 1e-12) << z;
        }
}

TEST(ComplexGamma, ConjugateSymmetry) {
    for (double im : {0.3, 1.0, 1.9}) {
        const cplx z(1.7, im);
        EXPECT_LT(std::abs(lapsum::gamma(std::conj(z)) - std::conj(lapsum::gamma(z))), 1e-14);
    }
}

TEST(ComplexGamma, ReciprocalVanishesAtPoles) {
    for (int n = 0; n <= 5; ++n) EXPECT_EQ(lapsum::rgamma(static_cast<double>(-n)), cplx(0.0));
    EXPECT_LT(std::abs(lapsum::rgamma({1.3, 0.4}) * lapsum::gamma({1.3, 0.4}) - 1.0), 1e-14);
}

TEST(ComplexGamma, ReflectionFormula) {
    for (double im : {0.0, 0.7, -1.5}) {
        const cplx z(0.3, im);
        const cplx lhs = lapsum::gamma(z) * lapsum::gamma(1.0 - z);
        const cplx rhs = lapsum::pi / std::sin(lapsum::pi * z);
        EXPECT_LT(rel(lhs, rhs), 1e-12);
    }
}

} // namespace
