#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace exactalg {

// Arbitrary-precision integers everywhere; Smith normal form intermediate
// entries can blow up far past 64 bits even for small inputs.
using Int = boost::multiprecision::cpp_int;

}  // namespace exactalg
