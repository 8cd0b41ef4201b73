#include "ktj/qfactored.hpp"

#include <algorithm>
#include <cassert>

#include "ktj/errors.hpp"

namespace ktj {

const RootJet& JetCache::qint_jet(int k) {
    assert(k >= 1);
    while (static_cast<int>(int_jets_.size()) <= k) int_jets_.push_back(nullptr);
    auto& slot = int_jets_[static_cast<std::size_t>(k)];
    if (!slot) slot = std::make_unique<RootJet>(jet_eval(qint_ratfun(k), N_, prec_));
    return *slot;
}

const RootJet& JetCache::qfact_jet(int k) {
    assert(k >= 0);
    while (static_cast<int>(fact_jets_.size()) <= k) fact_jets_.push_back(nullptr);
    auto& slot = fact_jets_[static_cast<std::size_t>(k)];
    if (!slot) {
        if (k <= 1) {
            slot = std::make_unique<RootJet>(RootJet::one(N_, prec_));
        } else {
            slot = std::make_unique<RootJet>(qfact_jet(k - 1) * qint_jet(k));
        }
    }
    return *slot;
}

QFactored& QFactored::mul_int(int k, int p) {
    if (p == 0 || is_zero()) return *this;
    if (k == 0) throw DomainError("QFactored: [0] factor");
    if (k < 0) {
        if (p % 2 != 0) coef = -coef;
        k = -k;
    }
    if (k == 1) return *this; // [1] = 1
    int_pows[k] += p;
    if (int_pows[k] == 0) int_pows.erase(k);
    return *this;
}

QFactored& QFactored::mul_fact(int k, int p) {
    if (p == 0 || is_zero()) return *this;
    if (k < 0) throw DomainError("QFactored: negative factorial");
    if (k <= 1) return *this; // [0]! = [1]! = 1
    fact_pows[k] += p;
    if (fact_pows[k] == 0) fact_pows.erase(k);
    return *this;
}

QFactored& QFactored::mul_mono(const Rat& c, int e2, int hgrade) {
    if (is_zero()) return *this;
    if (c == 0) { *this = zero(); return *this; }
    coef *= c;
    mono_e2 += e2;
    mono_h += hgrade;
    if (mono_h >= 2) { // h^2 = -A^3
        mono_h -= 2;
        mono_e2 += 6;
        coef = -coef;
    }
    return *this;
}

QFactored& QFactored::operator*=(const QFactored& o) {
    if (is_zero()) return *this;
    if (o.is_zero()) { *this = zero(); return *this; }
    mul_mono(o.coef, o.mono_e2, o.mono_h);
    for (auto [k, p] : o.int_pows) mul_int(k, p);
    for (auto [k, p] : o.fact_pows) mul_fact(k, p);
    return *this;
}

QFactored QFactored::operator*(const QFactored& o) const {
    QFactored r = *this;
    r *= o;
    return r;
}

QFactored QFactored::pow(int n) const {
    if (n == 0) return QFactored{};
    QFactored r;
    if (is_zero()) {
        if (n < 0) throw DivisionByZero("QFactored: negative power of zero");
        return *this;
    }
    r.coef = 1;
    // exponents just scale; the h-grade needs the reduction loop
    for (auto [k, p] : int_pows) r.int_pows[k] = p * n;
    for (auto [k, p] : fact_pows) r.fact_pows[k] = p * n;
    int m = n < 0 ? -n : n;
    Rat c = 1;
    for (int i = 0; i < m; ++i) c *= coef;
    if (n < 0) c = Rat(1) / c;
    r.coef = c;
    r.mono_e2 = mono_e2 * n;
    int htotal = mono_h * n; // may be negative
    // reduce h^{2t} = (-A^3)^t
    int t = htotal >= 0 ? htotal / 2 : -((-htotal + 1) / 2);
    int rem = htotal - 2 * t; // 0 or 1
    r.mono_e2 += 6 * t;
    if (t % 2 != 0) r.coef = -r.coef;
    r.mono_h = rem;
    return r;
}

RatFun QFactored::to_ratfun() const {
    if (is_zero()) return RatFun();
    TwistLaurent num = TwistLaurent::monomial(coef, mono_e2, mono_h);
    TwistLaurent den = TwistLaurent::one();
    for (auto [k, p] : int_pows) {
        const TwistLaurent& q = qint_poly(k);
        for (int i = 0; i < std::abs(p); ++i) {
            if (p > 0) num *= q; else den *= q;
        }
    }
    for (auto [k, p] : fact_pows) {
        const TwistLaurent& q = qfact_poly(k);
        for (int i = 0; i < std::abs(p); ++i) {
            if (p > 0) num *= q; else den *= q;
        }
    }
    return RatFun(std::move(num), std::move(den));
}

RootJet QFactored::jet(JetCache& cache) const {
    int N = cache.N();
    if (is_zero()) return RootJet::zero(N);
    TwistLaurent mono = TwistLaurent::monomial(coef, mono_e2, mono_h);
    RootJet r = RootJet::from_poly(mono, N, cache.precision());
    for (auto [k, p] : int_pows) r = r * cache.qint_jet(k).pow(p);
    for (auto [k, p] : fact_pows) r = r * cache.qfact_jet(k).pow(p);
    return r;
}

std::complex<double> QFactored::eval(std::complex<double> A, HBranch branch) const {
    std::complex<double> v = TwistLaurent::monomial(coef, mono_e2, mono_h).eval(A, branch);
    for (auto [k, p] : int_pows) {
        std::complex<double> q = qint_ratfun(k).eval_exact(A, branch);
        v *= std::pow(q, p);
    }
    for (auto [k, p] : fact_pows) {
        std::complex<double> q = qfact_poly(k).eval(A, branch);
        v *= std::pow(q, p);
    }
    return v;
}

TwistLaurent QFactored::numerator_against(const std::map<int, int>& den_int,
                                          const std::map<int, int>& den_fact) const {
    if (is_zero()) return TwistLaurent::zero();
    TwistLaurent num = TwistLaurent::monomial(coef, mono_e2, mono_h);
    auto apply = [&](const std::map<int, int>& own, const std::map<int, int>& den, bool fact) {
        for (auto [k, dp] : den) {
            auto it = own.find(k);
            int p = (it == own.end() ? 0 : it->second) + dp;
            if (p < 0) throw DomainError("numerator_against: denominator profile too small");
            for (int i = 0; i < p; ++i) num *= fact ? qfact_poly(k) : qint_poly(k);
        }
        for (auto [k, p] : own) {
            if (den.count(k)) continue;
            if (p < 0) throw DomainError("numerator_against: uncovered denominator factor");
            for (int i = 0; i < p; ++i) num *= fact ? qfact_poly(k) : qint_poly(k);
        }
    };
    apply(int_pows, den_int, false);
    apply(fact_pows, den_fact, true);
    return num;
}

int QFactored::denominator_factor_count() const {
    int c = 0;
    for (auto [k, p] : int_pows) { (void)k; if (p < 0) c -= p; }
    for (auto [k, p] : fact_pows) { (void)k; if (p < 0) c -= p; }
    return c;
}

int QFactored::max_argument() const {
    int m = 0;
    for (auto [k, p] : int_pows) { (void)p; m = std::max(m, k); }
    for (auto [k, p] : fact_pows) { (void)p; m = std::max(m, k); }
    return m;
}

QFactored theta_factored(int a, int b, int c) {
    if (!admissible(a, b, c)) throw InadmissibleTriple("theta: inadmissible triple");
    int ap = a - 1, bp = b - 1, cp = c - 1;
    int s = (ap + bp + cp) / 2;
    QFactored f;
    if (s % 2 != 0) f.coef = -1;
    f.mul_fact(s + 1, 1);
    f.mul_fact(s - ap, 1);
    f.mul_fact(s - bp, 1);
    f.mul_fact(s - cp, 1);
    f.mul_fact(ap, -1);
    f.mul_fact(bp, -1);
    f.mul_fact(cp, -1);
    return f;
}

QFactored unknot_factored(int N) {
    QFactored f;
    if (N % 2 == 0) f.coef = -1;
    f.mul_int(N, 1);
    return f;
}

QFactored ring_factored(int k, int N) {
    QFactored f;
    if (N % 2 == 0) f.coef = -1;
    f.mul_int(k * N, 1);
    f.mul_int(k, -1);
    return f;
}

QFactored halftwist_factored(int k, int sign) {
    TwistLaurent t = halftwist_coeff(k, sign);
    assert(t.size() == 1);
    const auto& [key, c] = *t.terms().begin();
    QFactored f;
    f.mul_mono(c, key.second, key.first);
    return f;
}

TetFactored tet_factored(const TetLabels& labels) {
    if (!labels.valid()) throw InadmissibleTriple("tet: inadmissible vertex triple");
    auto V = labels.vertex_sums();
    auto B = labels.square_sums();
    TetFactored out;
    QFactored& pre = out.prefactor;
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 4; ++n)
            pre.mul_fact(B[static_cast<std::size_t>(m)] - V[static_cast<std::size_t>(n)], 1);
    for (int k = 0; k < 6; ++k) pre.mul_fact(labels.j[static_cast<std::size_t>(k)] - 1, -1);

    int zlo = *std::max_element(V.begin(), V.end());
    int zhi = *std::min_element(B.begin(), B.end());
    for (int z = zlo; z <= zhi; ++z) {
        QFactored t;
        if (z % 2 != 0) t.coef = -1;
        t.mul_fact(z + 1, 1);
        for (int r = 0; r < 3; ++r) t.mul_fact(B[static_cast<std::size_t>(r)] - z, -1);
        for (int s = 0; s < 4; ++s) t.mul_fact(z - V[static_cast<std::size_t>(s)], -1);
        out.terms.push_back(std::move(t));
    }
    return out;
}

RatFun TetFactored::to_ratfun() const {
    RatFun sum;
    for (const auto& t : terms) sum += t.to_ratfun();
    return prefactor.to_ratfun() * sum;
}

RootJet TetFactored::jet(JetCache& cache) const {
    RootJet sum = RootJet::zero(cache.N());
    for (const auto& t : terms) sum = sum + t.jet(cache);
    return prefactor.jet(cache) * sum;
}

std::complex<double> TetFactored::eval(std::complex<double> A, HBranch branch) const {
    std::complex<double> sum{0, 0};
    for (const auto& t : terms) sum += t.eval(A, branch);
    return prefactor.eval(A, branch) * sum;
}

RatFun theta_value(int a, int b, int c) { return theta_factored(a, b, c).to_ratfun(); }

RatFun tet_value(const TetLabels& labels) { return tet_factored(labels).to_ratfun(); }

namespace {

TwistLaurent expand_profile(const std::map<int, int>& ints, const std::map<int, int>& facts) {
    TwistLaurent p = TwistLaurent::one();
    for (auto [k, e] : ints)
        for (int i = 0; i < e; ++i) p *= qint_poly(k);
    for (auto [k, e] : facts)
        for (int i = 0; i < e; ++i) p *= qfact_poly(k);
    return p;
}

// exponents needed to raise `have` to `want` (both positive profiles)
std::map<int, int> profile_deficit(const std::map<int, int>& have, const std::map<int, int>& want) {
    std::map<int, int> d;
    for (auto [k, e] : want) {
        auto it = have.find(k);
        int lack = e - (it == have.end() ? 0 : it->second);
        if (lack > 0) d[k] = lack;
    }
    return d;
}

void profile_max(std::map<int, int>& into, const std::map<int, int>& other) {
    for (auto [k, e] : other) {
        auto& slot = into[k];
        slot = std::max(slot, e);
    }
}

void profile_add(std::map<int, int>& into, const std::map<int, int>& other) {
    for (auto [k, e] : other) into[k] += e;
}

} // namespace

FactoredRatio FactoredRatio::from_qfactored(const QFactored& q) {
    FactoredRatio r;
    if (q.is_zero()) {
        r.num = TwistLaurent::zero();
        return r;
    }
    r.num = TwistLaurent::monomial(q.coef, q.mono_e2, q.mono_h);
    for (auto [k, p] : q.int_pows) {
        if (p > 0)
            for (int i = 0; i < p; ++i) r.num *= qint_poly(k);
        else
            r.den_ints[k] = -p;
    }
    for (auto [k, p] : q.fact_pows) {
        if (p > 0)
            for (int i = 0; i < p; ++i) r.num *= qfact_poly(k);
        else
            r.den_facts[k] = -p;
    }
    return r;
}

FactoredRatio& FactoredRatio::operator*=(const FactoredRatio& o) {
    num *= o.num;
    profile_add(den_ints, o.den_ints);
    profile_add(den_facts, o.den_facts);
    return *this;
}

void FactoredRatio::add(const FactoredRatio& o) {
    if (o.is_zero()) return;
    if (is_zero()) {
        *this = o;
        return;
    }
    std::map<int, int> ints = den_ints, facts = den_facts;
    profile_max(ints, o.den_ints);
    profile_max(facts, o.den_facts);
    TwistLaurent mine =
        num * expand_profile(profile_deficit(den_ints, ints), profile_deficit(den_facts, facts));
    TwistLaurent theirs = o.num * expand_profile(profile_deficit(o.den_ints, ints),
                                                 profile_deficit(o.den_facts, facts));
    num = mine + theirs;
    den_ints = std::move(ints);
    den_facts = std::move(facts);
}

RatFun FactoredRatio::to_ratfun() const {
    return RatFun(num, expand_profile(den_ints, den_facts));
}

FactoredRatio tet_factored_ratio(const TetLabels& labels) {
    if (!labels.valid()) throw InadmissibleTriple("tet: inadmissible vertex triple");
    auto V = labels.vertex_sums();
    auto B = labels.square_sums();
    int zlo = *std::max_element(V.begin(), V.end());
    int zhi = *std::min_element(B.begin(), B.end());

    FactoredRatio r;
    for (int m = 0; m < 3; ++m)
        if (B[static_cast<std::size_t>(m)] - zlo >= 2)
            r.den_facts[B[static_cast<std::size_t>(m)] - zlo] += 1;
    for (int s = 0; s < 4; ++s)
        if (zhi - V[static_cast<std::size_t>(s)] >= 2)
            r.den_facts[zhi - V[static_cast<std::size_t>(s)]] += 1;
    for (int k = 0; k < 6; ++k) {
        int jp = labels.j[static_cast<std::size_t>(k)] - 1;
        if (jp >= 2) r.den_facts[jp] += 1;
    }

    TwistLaurent sum;
    for (int z = zlo; z <= zhi; ++z) {
        TwistLaurent term = z % 2 == 0 ? qfact_poly(z + 1) : -qfact_poly(z + 1);
        // [B_r - zlo]! / [B_r - z]! and [zhi - V_s]! / [z - V_s]! as products
        // of consecutive quantum integers
        for (int m = 0; m < 3; ++m)
            for (int j = B[static_cast<std::size_t>(m)] - z + 1;
                 j <= B[static_cast<std::size_t>(m)] - zlo; ++j)
                term *= qint_poly(j);
        for (int s = 0; s < 4; ++s)
            for (int j = z - V[static_cast<std::size_t>(s)] + 1;
                 j <= zhi - V[static_cast<std::size_t>(s)]; ++j)
                term *= qint_poly(j);
        sum += term;
    }
    TwistLaurent pre = TwistLaurent::one();
    for (int m = 0; m < 3; ++m)
        for (int n = 0; n < 4; ++n)
            pre *= qfact_poly(B[static_cast<std::size_t>(m)] - V[static_cast<std::size_t>(n)]);
    r.num = pre * sum;
    return r;
}

} // namespace ktj
