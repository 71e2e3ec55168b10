#pragma once

#include <gmpxx.h>

#include <stdexcept>
#include <string>

namespace qdeg {

// Exact rational scalar used throughout. GMP keeps every value canonical
// (reduced, positive denominator), which is what certificate round-trips
// rely on.
using Rat = mpq_class;

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A contradiction with an invariant that valid inputs cannot trigger.
struct InternalError : std::logic_error {
  using std::logic_error::logic_error;
};

// Parses "p/q" (or a bare integer "p"). Throws Error on malformed input
// or zero denominator.
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw Error("empty rational literal");
  for (char c : s)
    if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
      throw Error("malformed rational literal: " + s);
  mpq_t tmp;
  mpq_init(tmp);
  if (mpq_set_str(tmp, s.c_str(), 10) != 0) {
    mpq_clear(tmp);
    throw Error("malformed rational literal: " + s);
  }
  if (mpz_sgn(mpq_denref(tmp)) == 0) {
    mpq_clear(tmp);
    throw Error("zero denominator: " + s);
  }
  mpq_canonicalize(tmp);
  Rat r(tmp);
  mpq_clear(tmp);
  return r;
}

// Always "p/q", including "/1", so emitted files have a single spelling.
inline std::string rat_str(const Rat& r) {
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

// mpq_class(p, q) does not reduce; this does.
inline Rat make_rat(long num, long den) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

}  // namespace qdeg
