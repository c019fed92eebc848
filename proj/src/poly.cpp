#include "wres/poly.hpp"

#include <algorithm>
#include <sstream>

#include "wres/errors.hpp"

namespace wres {

Ambient make_ambient(std::vector<std::string> names) {
  for (size_t i = 0; i < names.size(); ++i) {
    if (names[i].empty()) throw StructuralError("empty variable name");
    for (size_t j = i + 1; j < names.size(); ++j)
      if (names[i] == names[j])
        throw StructuralError("duplicate variable name '" + names[i] + "'");
  }
  return std::make_shared<const std::vector<std::string>>(std::move(names));
}

bool same_ambient(const Ambient& a, const Ambient& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

int var_index(const Ambient& a, const std::string& name) {
  for (size_t i = 0; i < a->size(); ++i)
    if ((*a)[i] == name) return (int)i;
  return -1;
}

unsigned long Mono::degree() const {
  unsigned long d = 0;
  for (auto e : exps) d += e;
  return d;
}

bool Mono::is_unit() const {
  for (auto e : exps)
    if (e) return false;
  return true;
}

bool grlex_less(const Mono& a, const Mono& b) {
  unsigned long da = a.degree(), db = b.degree();
  if (da != db) return da < db;
  return a.exps < b.exps;
}

Poly Poly::zero(Ambient amb) { return Poly(std::move(amb)); }

Poly Poly::constant(Ambient amb, const Rat& c) {
  Poly p(std::move(amb));
  if (c != 0) p.terms_.emplace(Mono{std::vector<std::uint32_t>(p.ambient_->size(), 0)}, c);
  return p;
}

Poly Poly::variable(Ambient amb, int j) {
  Poly p(std::move(amb));
  if (j < 0 || j >= p.nvars()) throw StructuralError("variable index out of range");
  Mono m{std::vector<std::uint32_t>(p.ambient_->size(), 0)};
  m.exps[j] = 1;
  p.terms_.emplace(std::move(m), Rat(1));
  return p;
}

Poly Poly::monomial(Ambient amb, Mono m, const Rat& c) {
  Poly p(std::move(amb));
  if ((int)m.exps.size() != p.nvars())
    throw StructuralError("monomial exponent length does not match ambient");
  if (c != 0) p.terms_.emplace(std::move(m), c);
  return p;
}

std::optional<unsigned long> Poly::degree() const {
  if (terms_.empty()) return std::nullopt;
  // grlex order: last term has maximal degree
  return terms_.rbegin()->first.degree();
}

Rat Poly::constant_term() const {
  if (terms_.empty()) return Rat(0);
  const auto& first = *terms_.begin();
  if (first.first.is_unit()) return first.second;
  return Rat(0);
}

Rat Poly::coeff(const Mono& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Rat(0) : it->second;
}

void Poly::add_term(const Mono& m, const Rat& c) {
  if ((int)m.exps.size() != nvars())
    throw StructuralError("term exponent length does not match ambient");
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void Poly::check_same(const Poly& o) const {
  if (!same_ambient(ambient_, o.ambient_))
    throw StructuralError("ambient mismatch between polynomials");
}

Poly Poly::operator-() const {
  Poly out(ambient_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, -c);
  return out;
}

Poly Poly::operator+(const Poly& o) const {
  check_same(o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, c);
  return out;
}

Poly Poly::operator-(const Poly& o) const {
  check_same(o);
  Poly out = *this;
  for (const auto& [m, c] : o.terms_) out.add_term(m, -c);
  return out;
}

Poly Poly::operator*(const Poly& o) const {
  check_same(o);
  Poly out(ambient_);
  for (const auto& [ma, ca] : terms_) {
    for (const auto& [mb, cb] : o.terms_) {
      Mono m{ma.exps};
      for (size_t i = 0; i < m.exps.size(); ++i) m.exps[i] += mb.exps[i];
      out.add_term(m, ca * cb);
    }
  }
  return out;
}

Poly Poly::operator*(const Rat& c) const {
  Poly out(ambient_);
  if (c == 0) return out;
  for (const auto& [m, k] : terms_) out.terms_.emplace(m, k * c);
  return out;
}

bool Poly::operator==(const Poly& o) const {
  if (!same_ambient(ambient_, o.ambient_)) return false;
  return terms_ == o.terms_;
}

Poly Poly::pow(unsigned long e) const {
  Poly out = Poly::constant(ambient_, Rat(1));
  Poly base = *this;
  while (e) {
    if (e & 1) out = out * base;
    base = (e >>= 1) ? base * base : base;
  }
  return out;
}

Poly operator*(const Rat& c, const Poly& p) { return p * c; }

namespace {

// Renders one monomial (no coefficient); empty string for the unit monomial.
std::string mono_str(const Ambient& amb, const Mono& m) {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < m.exps.size(); ++i) {
    if (!m.exps[i]) continue;
    if (!first) os << "*";
    first = false;
    os << (*amb)[i];
    if (m.exps[i] > 1) os << "^" << m.exps[i];
  }
  return os.str();
}

}  // namespace

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // leading (highest grlex) term first
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    Rat c = it->second;
    bool neg = c < 0;
    if (first) {
      if (neg) os << "-";
    } else {
      os << (neg ? " - " : " + ");
    }
    if (neg) c = -c;
    std::string mono = mono_str(ambient_, it->first);
    if (mono.empty()) {
      os << rat_str(c);
    } else if (c == 1) {
      os << mono;
    } else {
      os << rat_str(c) << "*" << mono;
    }
    first = false;
  }
  return os.str();
}

Poly partial(const Poly& f, int j) {
  if (j < 0 || j >= f.nvars()) throw StructuralError("partial: variable index out of range");
  Poly out(f.ambient());
  for (const auto& [m, c] : f.terms()) {
    if (!m.exps[j]) continue;
    Mono d{m.exps};
    Rat k = c * Rat((long)m.exps[j]);
    d.exps[j] -= 1;
    out.add_term(d, k);
  }
  return out;
}

Poly integrate_in_var(const Poly& f, int j) {
  if (j < 0 || j >= f.nvars())
    throw StructuralError("integrate_in_var: variable index out of range");
  Poly out(f.ambient());
  for (const auto& [m, c] : f.terms()) {
    Mono d{m.exps};
    d.exps[j] += 1;
    out.add_term(d, c / Rat((long)d.exps[j]));
  }
  return out;
}

Rat evaluate(const Poly& f, const std::vector<Rat>& point) {
  if ((int)point.size() != f.nvars())
    throw StructuralError("evaluate: point dimension does not match ambient");
  Rat total(0);
  for (const auto& [m, c] : f.terms()) {
    Rat t = c;
    for (size_t i = 0; i < m.exps.size(); ++i)
      if (m.exps[i]) t *= rat_pow(point[i], m.exps[i]);
    total += t;
  }
  return total;
}

}  // namespace wres
