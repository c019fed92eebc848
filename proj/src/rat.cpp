#include "wres/rat.hpp"

#include <cctype>

#include "wres/errors.hpp"

namespace wres {

std::string rat_str(const Rat& r) { return r.get_str(); }
std::string int_str(const Int& n) { return n.get_str(); }

Rat rat_parse(std::string_view text) {
  if (text.empty()) throw ParseError("empty rational literal");
  size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = (text[i] == '-');
    ++i;
  }
  auto digits = [&](size_t& pos) {
    size_t start = pos;
    while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
    if (pos == start) throw ParseError("expected digits in rational literal", (long)pos);
    return std::string(text.substr(start, pos - start));
  };
  std::string num = digits(i);
  std::string den = "1";
  if (i < text.size() && text[i] == '/') {
    ++i;
    den = digits(i);
  }
  if (i != text.size())
    throw ParseError("trailing characters in rational literal", (long)i);
  Int n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in rational literal");
  Rat r(n, d);
  r.canonicalize();
  if (neg) r = -r;
  return r;
}

bool rat_is_integer(const Rat& r) {
  // Divisibility test so the answer is right even for values that were
  // constructed without canonicalization.
  return mpz_divisible_p(r.get_num().get_mpz_t(), r.get_den().get_mpz_t()) != 0;
}

Int rat_floor(const Rat& r) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), r.get_num().get_mpz_t(), r.get_den().get_mpz_t());
  return q;
}

Rat rat_pow(const Rat& r, unsigned long e) {
  Rat out;
  mpz_pow_ui(out.get_num_mpz_t(), r.get_num().get_mpz_t(), e);
  mpz_pow_ui(out.get_den_mpz_t(), r.get_den().get_mpz_t(), e);
  out.canonicalize();
  return out;
}

Int int_factorial(const Int& n) {
  if (n < 0) throw ContractError("factorial of a negative integer");
  if (!n.fits_ulong_p())
    throw ResourceError("factorial argument too large to evaluate: " + int_str(n));
  Int out;
  mpz_fac_ui(out.get_mpz_t(), n.get_ui());
  return out;
}

Int int_lcm(const Int& a, const Int& b) {
  Int out;
  mpz_lcm(out.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return out;
}

}  // namespace wres
