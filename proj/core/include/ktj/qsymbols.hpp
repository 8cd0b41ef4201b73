#pragma once

#include <array>
#include <complex>

#include "ktj/ratfun.hpp"
#include "ktj/root_jet.hpp"
#include "ktj/twist_laurent.hpp"

namespace ktj {

/// Quantum integer [n] = (A^{2n} - A^{-2n})/(A^2 - A^{-2}) expanded as a
/// Laurent polynomial. [0] = 0 and [-n] = -[n]. Results are cached.
const TwistLaurent& qint_poly(int n);
/// Quantum factorial [n]! = [1][2]...[n]; [0]! = 1. Cached.
const TwistLaurent& qfact_poly(int n);
/// [n]! / ([k]! [n-k]!) computed by exact polynomial division; the division
/// is asserted exact. Throws DomainError for k < 0 or k > n.
TwistLaurent qbinom_poly(int n, int k);
/// [n] in its defining quotient form (useful for jets at the zeros of [n]).
RatFun qint_ratfun(int n);

/// Unknot value <N> = (-1)^{N-1}[N].
TwistLaurent unknot_poly(int N);

/// True iff colors (a,b,c) label an allowed trivalent vertex:
/// |a-b| < c < a+b and a+b+c odd.
bool admissible(int a, int b, int c);

/// Colors on the six edges of the standard tetrahedron. Vertex triples are
/// (j1,j2,j3), (j1,j5,j6), (j2,j4,j6), (j3,j4,j5); opposite edge pairs are
/// (j1,j4), (j2,j5), (j3,j6).
struct TetLabels {
    std::array<int, 6> j;

    static TetLabels all(int N) { return TetLabels{{N, N, N, N, N, N}}; }
    bool valid() const;
    // Half sums of primed (color - 1) labels at each vertex.
    std::array<int, 4> vertex_sums() const;
    // Half sums of primed labels over each square (complement of an opposite pair).
    std::array<int, 3> square_sums() const;
    bool operator==(const TetLabels&) const = default;
};

/// Labeled theta graph value as an exact rational function.
/// Throws InadmissibleTriple when (a,b,c) is not admissible.
RatFun theta_value(int a, int b, int c);

/// Labeled tetrahedron value (six-j symbol) as an exact rational function.
RatFun tet_value(const TetLabels& labels);

/// Coefficient of a half twist on a color-k edge: h^{±(k-1)} A^{±(k-1)(k-2)/2}.
TwistLaurent halftwist_coeff(int k, int sign);

/// Ring coefficient (-1)^{N-1}[kN]/[k].
RatFun ring_coeff(int k, int N);
/// Its limit at zeta_N: 0 when N does not divide k, else (-1)^{N-1+k-k/N} N.
std::complex<double> ring_coeff_at_root(int k, int N);

/// phi_N = (-1)^{(N-1)/2} e^{(N^2-1) pi i / 4N}, the half-twist value at zeta_N.
std::complex<double> phi_N(int N); // odd N only

/// sixj_N = sum_k qbinom((N-1)/2, k)^4 at zeta_N, by positive-real summation.
double sixj_value(int N); // odd N only; overflows to +inf for very large N
/// log(sixj_N), accumulated in log space so N in the thousands is fine.
double log_sixj(int N); // odd N only

/// [k] evaluated at zeta_N = sin(pi k / N) / sin(pi / N).
double qint_at_root(int k, int N);

} // namespace ktj
