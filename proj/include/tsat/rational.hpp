#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace tsat {

// All guarantees and expectations are exact; no floating point anywhere in
// the certificate path.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

}  // namespace tsat
