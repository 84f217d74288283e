#ifndef PWT_TESTUTIL_HPP
#define PWT_TESTUTIL_HPP

#include <doctest.h>

#include <cmath>

// Absolute and relative comparisons with the values visible on failure.
// Relative error is measured against the expected (second) argument.

#define CHECK_ABS(got, want, tol)                                                        \
    do {                                                                                 \
        const double tu_g = static_cast<double>(got);                                    \
        const double tu_w = static_cast<double>(want);                                   \
        const double tu_t = static_cast<double>(tol);                                    \
        INFO("got " << tu_g << ", want " << tu_w << ", |diff| "                          \
                    << std::abs(tu_g - tu_w) << ", tol " << tu_t);                       \
        CHECK(std::abs(tu_g - tu_w) <= tu_t);                                            \
    } while (0)

#define CHECK_REL(got, want, tol)                                                        \
    do {                                                                                 \
        const double tu_g = static_cast<double>(got);                                    \
        const double tu_w = static_cast<double>(want);                                   \
        const double tu_t = static_cast<double>(tol);                                    \
        const double tu_d = std::abs(tu_g - tu_w);                                       \
        const double tu_s = std::max(std::abs(tu_w), 1e-300);                            \
        INFO("got " << tu_g << ", want " << tu_w << ", rel " << tu_d / tu_s << ", tol "  \
                    << tu_t);                                                            \
        CHECK(tu_d <= tu_t * tu_s);                                                      \
    } while (0)

#endif
