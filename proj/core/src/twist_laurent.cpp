#include "ktj/twist_laurent.hpp"

#include <cassert>
#include <sstream>

#include "ktj/errors.hpp"

namespace ktj {

TwistLaurent TwistLaurent::monomial(const Rat& c, int exp2, int hgrade) {
    TwistLaurent p;
    if (c != 0) {
        assert(hgrade == 0 || hgrade == 1);
        p.terms_[{hgrade, exp2}] = c;
    }
    return p;
}

bool TwistLaurent::is_one() const {
    return terms_.size() == 1 && terms_.begin()->first == Key{0, 0} &&
           terms_.begin()->second == 1;
}

void TwistLaurent::add_term(const Key& k, const Rat& c) {
    auto it = terms_.find(k);
    if (it == terms_.end()) {
        if (c != 0) terms_.emplace(k, c);
        return;
    }
    it->second += c;
    if (it->second == 0) terms_.erase(it);
}

TwistLaurent TwistLaurent::operator-() const {
    TwistLaurent r;
    for (const auto& [k, c] : terms_) r.terms_[k] = -c;
    return r;
}

TwistLaurent& TwistLaurent::operator+=(const TwistLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, c);
    return *this;
}

TwistLaurent& TwistLaurent::operator-=(const TwistLaurent& o) {
    for (const auto& [k, c] : o.terms_) add_term(k, -c);
    return *this;
}

TwistLaurent TwistLaurent::operator+(const TwistLaurent& o) const {
    TwistLaurent r = *this;
    r += o;
    return r;
}

TwistLaurent TwistLaurent::operator-(const TwistLaurent& o) const {
    TwistLaurent r = *this;
    r -= o;
    return r;
}

TwistLaurent TwistLaurent::operator*(const TwistLaurent& o) const {
    TwistLaurent r;
    for (const auto& [ka, ca] : terms_) {
        for (const auto& [kb, cb] : o.terms_) {
            int hg = ka.first + kb.first;
            int e2 = ka.second + kb.second;
            Rat c = ca * cb;
            if (hg == 2) { // h^2 = -A^3
                hg = 0;
                e2 += 6;
                c = -c;
            }
            r.add_term({hg, e2}, c);
        }
    }
    return r;
}

TwistLaurent TwistLaurent::scaled(const Rat& c) const {
    if (c == 0) return {};
    TwistLaurent r;
    for (const auto& [k, v] : terms_) r.terms_[k] = v * c;
    return r;
}

TwistLaurent TwistLaurent::shifted(const Rat& c, int exp2, int hgrade) const {
    return *this * monomial(c, exp2, hgrade);
}

TwistLaurent TwistLaurent::pow(int n) const {
    assert(n >= 0);
    TwistLaurent r = one();
    TwistLaurent base = *this;
    while (n > 0) {
        if (n & 1) r *= base;
        base = base * base;
        n >>= 1;
    }
    return r;
}

int TwistLaurent::min_exp2() const {
    assert(!terms_.empty());
    int m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) {
        (void)c;
        if (k.second < m) m = k.second;
    }
    return m;
}

int TwistLaurent::max_exp2() const {
    assert(!terms_.empty());
    int m = terms_.begin()->first.second;
    for (const auto& [k, c] : terms_) {
        (void)c;
        if (k.second > m) m = k.second;
    }
    return m;
}

bool TwistLaurent::has_h() const {
    for (const auto& [k, c] : terms_) {
        (void)c;
        if (k.first == 1) return true;
    }
    return false;
}

std::complex<double> TwistLaurent::eval(std::complex<double> A, HBranch branch) const {
    std::complex<double> sum{0.0, 0.0};
    const std::complex<double> hval = eval_h(A, branch);
    for (const auto& [k, c] : terms_) {
        std::complex<double> t = std::pow(A, 0.5 * k.second) * to_double(c);
        if (k.first == 1) t *= hval;
        sum += t;
    }
    return sum;
}

TwistLaurent TwistLaurent::divide_exact(const TwistLaurent& d) const {
    if (d.is_zero()) throw DivisionByZero("divide_exact: zero divisor");
    if (has_h() || d.has_h()) throw DomainError("divide_exact: h-free operands required");
    if (is_zero()) return {};

    // Long division from the top exponent down. Laurent shifts commute with
    // division, so only exponent differences matter.
    TwistLaurent rem = *this;
    TwistLaurent q;
    const auto dlead = std::prev(d.terms_.end()); // largest doubled exponent
    const int dexp = dlead->first.second;
    const Rat& dcoef = dlead->second;
    const int shift_floor = min_exp2() - d.min_exp2();
    while (!rem.is_zero()) {
        auto rlead = std::prev(rem.terms_.end());
        int shift = rlead->first.second - dexp;
        if (shift < shift_floor) throw DomainError("divide_exact: division not exact");
        Rat c = rlead->second / dcoef;
        TwistLaurent mono = TwistLaurent::monomial(c, shift, 0);
        q += mono;
        rem -= d * mono;
    }
    return q;
}

std::string TwistLaurent::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [k, c] : terms_) {
        if (!first) os << " + ";
        first = false;
        os << c.str();
        if (k.first == 1) os << "*h";
        if (k.second != 0) {
            os << "*A^";
            if (k.second % 2 == 0) os << (k.second / 2);
            else os << "(" << k.second << "/2)";
        }
    }
    return os.str();
}

} // namespace ktj
