#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>

#include "blowup/common.hpp"

namespace blowup {

// All counts are arbitrary-precision integers and all densities exact
// rationals; conversion to floating point happens only at reporting
// boundaries.
using Int = mpz_class;
using Rat = mpq_class;

inline Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw input_error("rational with zero denominator");
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline Rat make_rat(long num, long den) { return make_rat(Int(num), Int(den)); }

inline Int pow_int(const Int& base, unsigned long e) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
    return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
    Rat r(pow_int(base.get_num(), e), pow_int(base.get_den(), e));
    r.canonicalize();
    return r;
}

// binom(n, 2)
inline Int binom2(const Int& n) {
    if (n < 2) return 0;
    return n * (n - 1) / 2;
}

inline Int floor_rat(const Rat& x) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline Int ceil_rat(const Rat& x) {
    Int q;
    mpz_cdiv_q(q.get_mpz_t(), x.get_num().get_mpz_t(), x.get_den().get_mpz_t());
    return q;
}

inline std::string rat_str(const Rat& x) {
    if (x.get_den() == 1) return x.get_num().get_str();
    return x.get_num().get_str() + "/" + x.get_den().get_str();
}

inline Rat parse_rat(const std::string& s) {
    Rat r;
    if (r.set_str(s, 10) != 0) throw input_error("cannot parse rational: " + s);
    r.canonicalize();
    if (r.get_den() == 0) throw input_error("rational with zero denominator: " + s);
    return r;
}

inline double rat_double(const Rat& x) { return x.get_d(); }

}  // namespace blowup
