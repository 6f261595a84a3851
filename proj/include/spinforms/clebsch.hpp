#pragma once

#include "spinforms/halfint.hpp"
#include "spinforms/scalar.hpp"

namespace spinforms {

namespace detail {
inline BigInt factorial(int n) {
    if (n < 0) throw ScalarError("factorial of negative argument");
    BigInt f = 1;
    for (int k = 2; k <= n; ++k) f *= k;
    return f;
}
/// Half-integer combination that must land on an integer.
inline int as_int(HalfInt h) {
    if (!h.is_integer()) throw ScalarError("selection rules violated: non-integer factorial argument");
    return h.twice() / 2;
}
}  // namespace detail

/**
 * Clebsch-Gordan coefficient <j1 m1; j2 m2 | j m> in the Condon-Shortley
 * convention, exact: the closed-form value is a rational multiple of the
 * square root of a rational. Selection-rule violations give 0.
 */
inline Scalar clebsch_gordan(HalfInt j1, HalfInt j2, HalfInt m1, HalfInt m2, HalfInt j, HalfInt m) {
    if (m1 + m2 != m) return Scalar();
    if (j > j1 + j2 || j < (j1 - j2).abs()) return Scalar();
    if (m1.abs() > j1 || m2.abs() > j2 || m.abs() > j) return Scalar();
    if (!(j1 + j2 + j).is_integer()) return Scalar();

    using detail::as_int;
    using detail::factorial;

    BigRat pre = BigRat(j.twice() + 1);
    pre *= BigRat(factorial(as_int(j1 + j2 - j)));
    pre *= BigRat(factorial(as_int(j1 - j2 + j)));
    pre *= BigRat(factorial(as_int(j2 - j1 + j)));
    pre /= BigRat(factorial(as_int(j1 + j2 + j) + 1));
    pre *= BigRat(factorial(as_int(j + m)));
    pre *= BigRat(factorial(as_int(j - m)));
    pre *= BigRat(factorial(as_int(j1 + m1)));
    pre *= BigRat(factorial(as_int(j1 - m1)));
    pre *= BigRat(factorial(as_int(j2 + m2)));
    pre *= BigRat(factorial(as_int(j2 - m2)));

    BigRat sum = 0;
    int kmax = as_int(j1 + j2 - j);
    for (int k = 0; k <= kmax + 2 * j2.twice(); ++k) {
        int a1 = as_int(j1 + j2 - j) - k;
        int a2 = as_int(j1 - m1) - k;
        int a3 = as_int(j2 + m2) - k;
        int a4 = as_int(j - j2 + m1) + k;
        int a5 = as_int(j - j1 - m2) + k;
        if (a1 < 0 || a2 < 0 || a3 < 0 || a4 < 0 || a5 < 0) continue;
        BigRat term = BigRat(1, factorial(k));
        term /= BigRat(factorial(a1));
        term /= BigRat(factorial(a2));
        term /= BigRat(factorial(a3));
        term /= BigRat(factorial(a4));
        term /= BigRat(factorial(a5));
        sum += (k % 2 == 0) ? term : -term;
    }
    return Scalar(sum) * Scalar(pre).sqrt();
}

}  // namespace spinforms
