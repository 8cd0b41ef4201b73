#include "ktj/qsymbols.hpp"

#include <cmath>
#include <deque>
#include <mutex>
#include <vector>

#include "ktj/errors.hpp"

namespace ktj {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Deques keep references stable while the caches grow.
std::deque<TwistLaurent>& qint_cache() {
    static std::deque<TwistLaurent> c;
    return c;
}
std::deque<TwistLaurent>& qfact_cache() {
    static std::deque<TwistLaurent> c;
    return c;
}
std::mutex& cache_mutex() {
    static std::mutex m;
    return m;
}

// [n] = A^{2(n-1)} + A^{2(n-3)} + ... + A^{-2(n-1)}, n >= 0
TwistLaurent qint_build(int n) {
    TwistLaurent p;
    for (int i = 0; i < n; ++i) p += TwistLaurent::a_pow(4 * (n - 1 - 2 * i));
    return p;
}

void grow_caches(int n) {
    auto& ints = qint_cache();
    auto& facts = qfact_cache();
    while (static_cast<int>(ints.size()) <= n)
        ints.push_back(qint_build(static_cast<int>(ints.size())));
    if (facts.empty()) facts.push_back(TwistLaurent::one());
    while (static_cast<int>(facts.size()) <= n) {
        int k = static_cast<int>(facts.size());
        facts.push_back(facts.back() * ints[static_cast<std::size_t>(k)]);
    }
}

} // namespace

const TwistLaurent& qint_poly(int n) {
    if (n < 0) throw DomainError("qint_poly: negative argument (use [-n] = -[n])");
    std::lock_guard<std::mutex> lock(cache_mutex());
    grow_caches(n);
    return qint_cache()[static_cast<std::size_t>(n)];
}

const TwistLaurent& qfact_poly(int n) {
    if (n < 0) throw DomainError("qfact: negative argument");
    std::lock_guard<std::mutex> lock(cache_mutex());
    grow_caches(n);
    return qfact_cache()[static_cast<std::size_t>(n)];
}

TwistLaurent qbinom_poly(int n, int k) {
    if (k < 0 || k > n) throw DomainError("qbinom: k out of range");
    TwistLaurent den = qfact_poly(k) * qfact_poly(n - k);
    return qfact_poly(n).divide_exact(den); // throws if not exactly divisible
}

RatFun qint_ratfun(int n) {
    TwistLaurent num = TwistLaurent::a_pow(4 * n) - TwistLaurent::a_pow(-4 * n);
    TwistLaurent den = TwistLaurent::a_pow(4) - TwistLaurent::a_pow(-4);
    return RatFun(std::move(num), std::move(den));
}

TwistLaurent unknot_poly(int N) {
    const TwistLaurent& p = qint_poly(N);
    return (N % 2 == 0) ? -p : p;
}

bool admissible(int a, int b, int c) {
    if (a < 1 || b < 1 || c < 1) return false;
    if ((a + b + c) % 2 == 0) return false;
    return std::abs(a - b) < c && c < a + b;
}

bool TetLabels::valid() const {
    return admissible(j[0], j[1], j[2]) && admissible(j[0], j[4], j[5]) &&
           admissible(j[1], j[3], j[5]) && admissible(j[2], j[3], j[4]);
}

std::array<int, 4> TetLabels::vertex_sums() const {
    auto p = [&](int i) { return j[static_cast<std::size_t>(i)] - 1; };
    return {(p(0) + p(1) + p(2)) / 2, (p(0) + p(4) + p(5)) / 2,
            (p(1) + p(3) + p(5)) / 2, (p(2) + p(3) + p(4)) / 2};
}

std::array<int, 3> TetLabels::square_sums() const {
    auto p = [&](int i) { return j[static_cast<std::size_t>(i)] - 1; };
    return {(p(1) + p(2) + p(4) + p(5)) / 2, (p(0) + p(2) + p(3) + p(5)) / 2,
            (p(0) + p(1) + p(3) + p(4)) / 2};
}

TwistLaurent halftwist_coeff(int k, int sign) {
    if (k < 1) throw DomainError("halftwist_coeff: color must be >= 1");
    int n = k - 1; // number of bands
    // h^{±n} A^{±n(n-1)/2}: n(n-1)/2 crossings plus one half twist per band.
    int hpow = n;
    int e2 = sign * n * (n - 1); // doubled exponent of A^{n(n-1)/2}
    // h^n = (h^2)^{n/2} h^{n mod 2} = (-A^3)^{floor(n/2)} h^{n mod 2}
    int half = hpow / 2;
    Rat c = (half % 2 == 0) ? Rat(1) : Rat(-1);
    int mono_e2 = e2 + sign * 6 * half;
    int hg = hpow % 2;
    TwistLaurent r = TwistLaurent::monomial(c, mono_e2, 0);
    if (hg) {
        if (sign > 0) {
            r = r * TwistLaurent::h_unit();
        } else {
            // h^{-1} = h / (-A^3) = -h A^{-3}
            r = r * TwistLaurent::monomial(Rat(-1), -6, 1);
        }
    }
    return r;
}

RatFun ring_coeff(int k, int N) {
    if (k < 1 || N < 1) throw DomainError("ring_coeff: colors must be >= 1");
    RatFun r = qint_ratfun(k * N) / qint_ratfun(k);
    return (N % 2 == 0) ? -r : r;
}

std::complex<double> ring_coeff_at_root(int k, int N) {
    if (k % N != 0) return {0.0, 0.0};
    int exp = (N - 1) + k - k / N;
    double s = (exp % 2 == 0) ? 1.0 : -1.0;
    return {s * N, 0.0};
}

std::complex<double> phi_N(int N) {
    if (N < 1 || N % 2 == 0) throw DomainError("phi_N: N must be odd");
    double angle = (static_cast<double>(N) * N - 1.0) / (4.0 * N) * kPi;
    std::complex<double> p = std::polar(1.0, angle);
    return ((N - 1) / 2) % 2 == 0 ? p : -p;
}

double qint_at_root(int k, int N) {
    return std::sin(kPi * k / N) / std::sin(kPi / N);
}

namespace {

// log [1], log([1][2]), ... at zeta_N; [i] > 0 for 1 <= i <= N-1.
std::vector<double> log_qfact_prefix(int N, int upto) {
    std::vector<double> pre(static_cast<std::size_t>(upto) + 1, 0.0);
    for (int i = 1; i <= upto; ++i)
        pre[static_cast<std::size_t>(i)] =
            pre[static_cast<std::size_t>(i - 1)] + std::log(qint_at_root(i, N));
    return pre;
}

} // namespace

double log_sixj(int N) {
    if (N < 1 || N % 2 == 0) throw DomainError("sixj: N must be odd");
    if (N == 1) return 0.0;
    int M = (N - 1) / 2;
    auto pre = log_qfact_prefix(N, 2 * M);
    auto lqb = [&](int k) {
        return pre[static_cast<std::size_t>(M)] - pre[static_cast<std::size_t>(k)] -
               pre[static_cast<std::size_t>(M - k)];
    };
    double best = 0.0;
    for (int k = 0; k <= M; ++k) best = std::max(best, 4.0 * lqb(k));
    double acc = 0.0;
    for (int k = 0; k <= M; ++k) acc += std::exp(4.0 * lqb(k) - best);
    return best + std::log(acc);
}

double sixj_value(int N) { return std::exp(log_sixj(N)); }

} // namespace ktj
