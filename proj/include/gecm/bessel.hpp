#pragma once

namespace gecm {

// log K_order(x), the modified Bessel function of the second kind.
//
// Evaluated through the exponentially scaled function e^x K_order(x), so the
// result stays finite over the whole working range (x in [1e-8, 700], order
// up to +-2000) instead of under/overflowing in double precision. Symmetric
// in the order: K_{-v}(x) = K_v(x). Throws std::domain_error for x <= 0 or
// non-finite inputs.
double log_bessel_k(double order, double x);

// log K_num(x) - log K_den(x), computed from the shared e^x scaling so the
// dominant -x terms cancel exactly rather than in floating point.
double log_bessel_k_ratio(double order_num, double order_den, double x);

// log of e^x K_order(x). Building block for the two functions above; exposed
// because density normalizers that subtract x anyway can skip the round trip.
double log_bessel_k_scaled(double order, double x);

}  // namespace gecm
