#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <sstream>

#include "json.hpp"

#include "ktj/errors.hpp"
#include "ktj/jones.hpp"
#include "ktj/ktg_dsl.hpp"
#include "ktj/lobachevsky.hpp"
#include "ktj/qsymbols.hpp"

namespace ktj {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Env {
    int N;
    std::vector<int> values;
    int at(Label l) const { return l.is_N() ? N : values[static_cast<std::size_t>(l.var)]; }
};

bool atom_admissible(const Atom& a, const Env& env) {
    switch (a.kind) {
        case Atom::Kind::Theta:
        case Atom::Kind::Fusion:
            return admissible(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]));
        case Atom::Kind::Tet: {
            TetLabels l{{env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]),
                         env.at(a.labels[3]), env.at(a.labels[4]), env.at(a.labels[5])}};
            return l.valid();
        }
        default:
            return true;
    }
}

QFactored twist_correction_factored(int c, int N, int h) {
    // A parent-band half twist acts on the unzipped strand pair as the full
    // half-twist braid, whose eigenvalue through the fused color c is exactly
    // halftwist_coeff(c)^h -- and that factor is already produced when the
    // half-twist moves are reversed at label c. The residual correction is 1.
    (void)c;
    (void)N;
    (void)h;
    return QFactored{};
}

// ---------------------------------------------------------------- jets

struct JetCtx {
    JetCache cache;
    std::map<std::array<int, 6>, RootJet> tets;
    JetCtx(int N, int prec) : cache(N, prec) {}

    const RootJet& tet(const TetLabels& l) {
        std::array<int, 6> key = l.j;
        auto it = tets.find(key);
        if (it == tets.end())
            it = tets.emplace(key, tet_factored(l).jet(cache)).first;
        return it->second;
    }
};

RootJet atom_jet(const Atom& a, const Env& env, JetCtx& ctx) {
    const int N = env.N;
    switch (a.kind) {
        case Atom::Kind::Theta:
            return theta_factored(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]))
                .pow(a.exponent)
                .jet(ctx.cache);
        case Atom::Kind::Fusion: {
            QFactored f = unknot_factored(env.at(a.labels[2]));
            f *= theta_factored(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]))
                     .pow(-1);
            return f.jet(ctx.cache);
        }
        case Atom::Kind::Tet: {
            TetLabels l{{env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]),
                         env.at(a.labels[3]), env.at(a.labels[4]), env.at(a.labels[5])}};
            return ctx.tet(l);
        }
        case Atom::Kind::Unknot:
            return unknot_factored(env.at(a.labels[0])).jet(ctx.cache);
        case Atom::Kind::HalfTwist:
            return halftwist_factored(env.at(a.labels[0]), a.sign).jet(ctx.cache);
        case Atom::Kind::Ring:
            return ring_factored(env.at(a.labels[0]), N).pow(a.exponent).jet(ctx.cache);
        case Atom::Kind::TwistCorrection:
            return twist_correction_factored(env.at(a.labels[0]), N, a.exponent).jet(ctx.cache);
    }
    throw KtjError("atom_jet: unreachable");
}

RootJet layers_jet(const JonesExpr& e, std::size_t i, Env& env, JetCtx& ctx) {
    const int N = env.N;
    if (i == e.layers.size()) return RootJet::one(N, ctx.cache.precision());
    const auto& layer = e.layers[i];
    auto eval_body = [&]() -> RootJet {
        for (const auto& a : layer.atoms)
            if (!atom_admissible(a, env)) return RootJet::zero(N);
        RootJet prod = layers_jet(e, i + 1, env, ctx);
        if (prod.is_exact_zero()) return prod;
        for (const auto& a : layer.atoms) prod = prod * atom_jet(a, env, ctx);
        return prod;
    };
    if (!layer.binder) return eval_body();
    const auto& b = *layer.binder;
    int lo = std::abs(env.at(b.a) - env.at(b.b)) + 1;
    int hi = env.at(b.a) + env.at(b.b) - 1;
    RootJet sum = RootJet::zero(N);
    for (int c = lo; c <= hi; c += 2) {
        env.values[static_cast<std::size_t>(b.var)] = c;
        sum = sum + eval_body();
    }
    return sum;
}

// ---------------------------------------------------------------- symbolic

FactoredRatio atom_sym(const Atom& a, const Env& env) {
    const int N = env.N;
    switch (a.kind) {
        case Atom::Kind::Theta:
            return FactoredRatio::from_qfactored(
                theta_factored(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]))
                    .pow(a.exponent));
        case Atom::Kind::Fusion: {
            QFactored f = unknot_factored(env.at(a.labels[2]));
            f *= theta_factored(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]))
                     .pow(-1);
            return FactoredRatio::from_qfactored(f);
        }
        case Atom::Kind::Tet: {
            TetLabels l{{env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]),
                         env.at(a.labels[3]), env.at(a.labels[4]), env.at(a.labels[5])}};
            return tet_factored_ratio(l);
        }
        case Atom::Kind::Unknot:
            return FactoredRatio::from_qfactored(unknot_factored(env.at(a.labels[0])));
        case Atom::Kind::HalfTwist:
            return FactoredRatio::from_qfactored(halftwist_factored(env.at(a.labels[0]), a.sign));
        case Atom::Kind::Ring:
            return FactoredRatio::from_qfactored(ring_factored(env.at(a.labels[0]), N).pow(a.exponent));
        case Atom::Kind::TwistCorrection:
            return FactoredRatio::from_qfactored(
                twist_correction_factored(env.at(a.labels[0]), N, a.exponent));
    }
    throw KtjError("atom_sym: unreachable");
}

FactoredRatio layers_sym(const JonesExpr& e, std::size_t i, Env& env, long& budget) {
    if (i == e.layers.size()) {
        if (--budget < 0) throw BudgetExceeded("eval_generic: summation budget exceeded");
        return FactoredRatio::one();
    }
    const auto& layer = e.layers[i];
    auto eval_body = [&]() -> FactoredRatio {
        for (const auto& a : layer.atoms)
            if (!atom_admissible(a, env)) {
                FactoredRatio z;
                z.num = TwistLaurent::zero();
                return z;
            }
        FactoredRatio prod = layers_sym(e, i + 1, env, budget);
        if (prod.is_zero()) return prod;
        for (const auto& a : layer.atoms) prod *= atom_sym(a, env);
        return prod;
    };
    if (!layer.binder) return eval_body();
    const auto& b = *layer.binder;
    int lo = std::abs(env.at(b.a) - env.at(b.b)) + 1;
    int hi = env.at(b.a) + env.at(b.b) - 1;
    FactoredRatio sum;
    sum.num = TwistLaurent::zero();
    for (int c = lo; c <= hi; c += 2) {
        env.values[static_cast<std::size_t>(b.var)] = c;
        sum.add(eval_body());
    }
    return sum;
}

// ---------------------------------------------------------------- numeric

std::complex<double> atom_num(const Atom& a, const Env& env, std::complex<double> A) {
    const int N = env.N;
    switch (a.kind) {
        case Atom::Kind::Theta: {
            auto v = theta_factored(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]))
                         .eval(A);
            return a.exponent == 1 ? v : std::pow(v, a.exponent);
        }
        case Atom::Kind::Fusion: {
            QFactored f = unknot_factored(env.at(a.labels[2]));
            f *= theta_factored(env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]))
                     .pow(-1);
            return f.eval(A);
        }
        case Atom::Kind::Tet: {
            TetLabels l{{env.at(a.labels[0]), env.at(a.labels[1]), env.at(a.labels[2]),
                         env.at(a.labels[3]), env.at(a.labels[4]), env.at(a.labels[5])}};
            return tet_factored(l).eval(A);
        }
        case Atom::Kind::Unknot:
            return unknot_factored(env.at(a.labels[0])).eval(A);
        case Atom::Kind::HalfTwist:
            return halftwist_factored(env.at(a.labels[0]), a.sign).eval(A);
        case Atom::Kind::Ring:
            return ring_factored(env.at(a.labels[0]), N).pow(a.exponent).eval(A);
        case Atom::Kind::TwistCorrection:
            return twist_correction_factored(env.at(a.labels[0]), N, a.exponent).eval(A);
    }
    throw KtjError("atom_num: unreachable");
}

std::complex<double> layers_num(const JonesExpr& e, std::size_t i, Env& env,
                                std::complex<double> A) {
    if (i == e.layers.size()) return {1, 0};
    const auto& layer = e.layers[i];
    auto eval_body = [&]() -> std::complex<double> {
        for (const auto& a : layer.atoms)
            if (!atom_admissible(a, env)) return {0, 0};
        std::complex<double> prod = layers_num(e, i + 1, env, A);
        for (const auto& a : layer.atoms) prod *= atom_num(a, env, A);
        return prod;
    };
    if (!layer.binder) return eval_body();
    const auto& b = *layer.binder;
    int lo = std::abs(env.at(b.a) - env.at(b.b)) + 1;
    int hi = env.at(b.a) + env.at(b.b) - 1;
    std::complex<double> sum{0, 0};
    for (int c = lo; c <= hi; c += 2) {
        env.values[static_cast<std::size_t>(b.var)] = c;
        sum += eval_body();
    }
    return sum;
}

} // namespace

std::complex<double> eval_at_root(const JonesExpr& e, int N) {
    if (N < 1) throw DomainError("eval_at_root: N must be positive");
    for (int prec = 2; prec <= 16; prec *= 2) {
        try {
            JetCtx ctx(N, prec);
            Env env{N, std::vector<int>(static_cast<std::size_t>(e.num_vars), 0)};
            RootJet total = layers_jet(e, 0, env, ctx);
            RootJet norm = RootJet::from_poly(unknot_poly(N), N, prec).pow(e.split_components);
            RootJet j = total / norm;
            try {
                return j.finite_value();
            } catch (const PoleAtPoint&) {
                throw UnexpectedPole("eval_at_root: normalized value has a pole at zeta_N");
            }
        } catch (const PrecisionExhausted&) {
            if (prec * 2 > 16) throw;
        }
    }
    throw PrecisionExhausted("eval_at_root: retries exhausted");
}

RatFun eval_generic(const JonesExpr& e, int N, long budget) {
    if (N < 1) throw DomainError("eval_generic: N must be positive");
    Env env{N, std::vector<int>(static_cast<std::size_t>(e.num_vars), 0)};
    FactoredRatio total = layers_sym(e, 0, env, budget);
    return total.to_ratfun();
}

RatFun eval_generic_normalized(const JonesExpr& e, int N, long budget) {
    RatFun norm(unknot_poly(N));
    return eval_generic(e, N, budget) / norm.pow(e.split_components);
}

std::complex<double> eval_generic_at(const JonesExpr& e, int N, std::complex<double> A) {
    Env env{N, std::vector<int>(static_cast<std::size_t>(e.num_vars), 0)};
    return layers_num(e, 0, env, A);
}

std::complex<double> augmented_closed_form(const MoveSequence& seq, int N) {
    MoveStats st = stats(seq);
    for (int m : st.per_unzip_rings)
        if (m < 1) throw NotAugmented("augmented_closed_form: an unzip has no rings");
    if (N % 2 == 0) return {0, 0};
    std::complex<double> phi = phi_N(N);
    std::complex<double> phi_pow{1, 0};
    for (int i = 0; i < std::abs(st.theta); ++i)
        phi_pow *= (st.theta >= 0 ? phi : std::conj(phi)); // |phi| = 1
    double val = std::pow(static_cast<double>(N), st.r) * std::pow(sixj_value(N), st.t + 1);
    return phi_pow * val;
}

namespace {

// value <= alpha N + beta over all odd N >= 3, as exact rationals
struct Aff {
    Rat alpha{0};
    Rat beta{0};
    Aff operator+(const Aff& o) const { return {alpha + o.alpha, beta + o.beta}; }
    Aff operator-(const Aff& o) const { return {alpha - o.alpha, beta - o.beta}; }
    Aff plus(long c) const { return {alpha, beta + c}; }
    Aff half() const { return {alpha / 2, beta / 2}; }
};

int ceil_rat(const Rat& r) {
    BigInt num = boost::multiprecision::numerator(r);
    BigInt den = boost::multiprecision::denominator(r);
    BigInt q = num / den;
    if (num > 0 && num % den != 0) q += 1;
    return q.convert_to<int>();
}

// least integer a with alpha N + beta <= a N for all odd N >= 3
int arg_bound(const Aff& v) {
    Rat worst = v.alpha + std::max(v.beta, Rat(0)) / 3;
    return std::max(1, ceil_rat(worst));
}

} // namespace

AugmentationBound sufficient_ring_count(const MoveSequence& seq) {
    // the bound is computed on the ring-free expression (rings only help)
    JonesExpr e = build_expression(seq, TwistMode::Lenient);
    std::vector<Aff> var_up(static_cast<std::size_t>(e.num_vars));
    auto up = [&](Label l) { return l.is_N() ? Aff{Rat(1), Rat(0)} : var_up[static_cast<std::size_t>(l.var)]; };

    AugmentationBound bound;
    bound.a = 1;
    for (const auto& layer : e.layers) {
        if (layer.binder) {
            var_up[static_cast<std::size_t>(layer.binder->var)] =
                (up(layer.binder->a) + up(layer.binder->b)).plus(-1);
        }
        for (const auto& atom : layer.atoms) {
            switch (atom.kind) {
                case Atom::Kind::Theta:
                case Atom::Kind::Fusion: {
                    Aff a = up(atom.labels[0]), b = up(atom.labels[1]), c = up(atom.labels[2]);
                    Aff s = (a + b + c).plus(-3).half();
                    bound.a = std::max(bound.a, arg_bound(s.plus(1)));
                    // s - a' etc. are bounded by s + 1 as well; primed labels:
                    for (const auto& l : {a, b, c})
                        bound.a = std::max(bound.a, arg_bound(l.plus(-1)));
                    bound.f += 4; // the theta numerator factorials divide the summand
                    break;
                }
                case Atom::Kind::Tet: {
                    Aff bmax{Rat(0), Rat(0)};
                    for (int m = 0; m < 3; ++m) {
                        // squares omit one opposite pair
                        static const int sq[3][4] = {{1, 2, 4, 5}, {0, 2, 3, 5}, {0, 1, 3, 4}};
                        Aff s{Rat(0), Rat(0)};
                        for (int t = 0; t < 4; ++t)
                            s = s + up(atom.labels[static_cast<std::size_t>(sq[m][t])]);
                        s = s.plus(-4).half();
                        if (s.alpha > bmax.alpha || (s.alpha == bmax.alpha && s.beta > bmax.beta))
                            bmax = s;
                    }
                    bound.a = std::max(bound.a, arg_bound(bmax.plus(1))); // [z+1]!
                    bound.a = std::max(bound.a, arg_bound(bmax));         // [B-z]!, [z-V]!, [B-V]!
                    for (const auto& l : atom.labels)
                        bound.a = std::max(bound.a, arg_bound(up(l).plus(-1))); // [j']!
                    bound.f += 13; // six [j']! plus the worst z-term (3 + 4)
                    break;
                }
                case Atom::Kind::Ring:
                case Atom::Kind::HalfTwist:
                case Atom::Kind::TwistCorrection:
                case Atom::Kind::Unknot:
                    break;
            }
        }
    }
    bound.n = bound.a * bound.f + 1;
    return bound;
}

ConjectureReport verify_conjecture(const MoveSequence& seq, const std::vector<int>& Ns) {
    ConjectureReport rep;
    rep.stats = stats(seq);
    for (int m : rep.stats.per_unzip_rings)
        if (m < 1) throw NotAugmented("verify_conjecture: sequence is not augmented");
    rep.target = 2.0 * (rep.stats.t + 1) * vol_oct();

    JonesExpr expr = build_expression(seq);
    std::vector<double> odd_errors;
    for (int N : Ns) {
        ConjectureRow row;
        row.N = N;
        row.target = rep.target;
        if (N % 2 == 0) {
            row.even = true;
            rep.original_conjecture_fails = true; // J_N = 0 for even colors
        } else {
            double log_abs = rep.stats.r * std::log(static_cast<double>(N)) +
                             (rep.stats.t + 1) * log_sixj(N);
            row.lhs = 2.0 * kPi / N * log_abs;
            row.error = row.target - row.lhs;
            odd_errors.push_back(row.error);
            if (N <= 9) {
                row.multisum_abs = std::abs(eval_at_root(expr, N));
            }
        }
        rep.rows.push_back(row);
    }
    rep.so3_supported = odd_errors.size() >= 2;
    for (std::size_t i = 1; i < odd_errors.size(); ++i)
        if (!(std::abs(odd_errors[i]) < std::abs(odd_errors[i - 1]))) rep.so3_supported = false;
    return rep;
}

std::string jones_record_json(const MoveSequence& seq, int N, std::complex<double> value,
                              const std::string& method) {
    // FNV-1a over the canonical text, stable across runs and platforms
    std::string text = serialize(seq);
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char ch : text) {
        h ^= ch;
        h *= 1099511628211ull;
    }
    MoveStats st = stats(seq);
    nlohmann::ordered_json j;
    std::ostringstream hash;
    hash << std::hex << h;
    j["sequence_hash"] = hash.str();
    j["N"] = N;
    j["value_re"] = value.real();
    j["value_im"] = value.imag();
    j["method"] = method;
    j["stats"] = {{"t", st.t}, {"u", st.u}, {"theta", st.theta}, {"r", st.r}};
    return j.dump();
}

} // namespace ktj
