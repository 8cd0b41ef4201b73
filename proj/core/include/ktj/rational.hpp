#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace ktj {

// Exact rational coefficients. Quantum factorial products overflow any fixed
// width long before the color bounds in the test corpus are reached.
using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

inline double to_double(const Rat& r) { return r.convert_to<double>(); }

} // namespace ktj
