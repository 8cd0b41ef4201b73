#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "ktj/ktg.hpp"
#include "ktj/qfactored.hpp"
#include "ktj/ratfun.hpp"

namespace ktj {

/// How unzips of edges carrying net half twists are handled: Strict rejects
/// them, Lenient multiplies in the braiding correction for the crossings the
/// twist induces between the unzipped strands.
enum class TwistMode { Strict, Lenient };

/// Edge label in the multisum: the running color N or a bound variable.
struct Label {
    int var = -1;
    bool is_N() const { return var < 0; }
    static Label N() { return {}; }
    static Label variable(int v) { return {v}; }
    bool operator==(const Label&) const = default;
};

struct Atom {
    enum class Kind { Theta, Tet, Unknot, HalfTwist, Ring, Fusion, TwistCorrection };
    Kind kind;
    std::vector<Label> labels; // Theta/Fusion: (a,b,c); Tet: (j1..j6); others: one label
    int sign = +1;             // HalfTwist direction
    int exponent = 1;          // Theta^{-1} for triangle factors, ring multiplicity,
                               // net twist for TwistCorrection
};

/// One sum binder: var ranges over all c admissible with (a, b).
struct SumBinder {
    int var;
    Label a, b;
};

/// The multisum is linearly nested: each layer optionally opens a sum and
/// contributes atoms multiplying everything below it. The terminal
/// tetrahedron sits in the innermost layer.
struct JonesExpr {
    struct Layer {
        std::optional<SumBinder> binder;
        std::vector<Atom> atoms;
    };
    std::vector<Layer> layers;
    int num_vars = 0;
    int split_components = 1;
};

/// Reverse the moves of a validated sequence into the multisum for its
/// unnormalized colored Jones bracket. Throws TwistedUnzip in strict mode
/// when an unzipped edge carries net twist.
JonesExpr build_expression(const MoveSequence& seq, TwistMode mode = TwistMode::Strict);

/// Normalized invariant at zeta_N = e^{i pi/2N} through jet arithmetic;
/// precision restarts at 2 and doubles up to 16 on PrecisionExhausted.
/// Throws UnexpectedPole if the normalized value still has a pole.
std::complex<double> eval_at_root(const JonesExpr& e, int N);

/// Exact unnormalized bracket as a rational function (symbolic A). The
/// budget caps the number of lattice points expanded.
RatFun eval_generic(const JonesExpr& e, int N, long budget = 200000);
/// Normalized variant: bracket / <U>^s.
RatFun eval_generic_normalized(const JonesExpr& e, int N, long budget = 200000);
/// Unnormalized bracket at a numeric point away from the poles.
std::complex<double> eval_generic_at(const JonesExpr& e, int N, std::complex<double> A);

/// Closed form of the normalized invariant at zeta_N for augmented sequences:
/// phi_N^theta N^r sixj_N^{t+1} for odd N, 0 for even N.
std::complex<double> augmented_closed_form(const MoveSequence& seq, int N);

/// Pole bookkeeping for the augmentation bound n = a f + 1: a bounds every
/// quantum factorial argument by a*N across the ring-free expression, f is
/// the number of denominator factors in a summand.
struct AugmentationBound {
    int a = 0;
    int f = 0;
    int n = 1;
};
AugmentationBound sufficient_ring_count(const MoveSequence& seq);

struct ConjectureRow {
    int N = 0;
    bool even = false;
    double lhs = 0.0;           // (2 pi / N) log |J_N|, meaningful for odd N
    double target = 0.0;        // 2 (t+1) Vol(Oct)
    double error = 0.0;         // target - lhs
    std::optional<double> multisum_abs; // |eval_at_root| cross-check, small N
};

struct ConjectureReport {
    MoveStats stats;
    double target = 0.0;
    std::vector<ConjectureRow> rows;
    bool original_conjecture_fails = false; // even colors give 0
    bool so3_supported = false;             // odd-color errors shrink monotonically
};

/// Volume-conjecture diagnostics over the given colors, using the closed form
/// (and the multisum as a cross-check for small odd N).
ConjectureReport verify_conjecture(const MoveSequence& seq, const std::vector<int>& Ns);

/// Result record {sequence_hash, N, value_re, value_im, method, stats}.
std::string jones_record_json(const MoveSequence& seq, int N, std::complex<double> value,
                              const std::string& method);

} // namespace ktj
