// Laurent polynomials on the coweight lattice P^vee: exponents are integer
// vectors in fundamental-coweight coordinates, coefficients exact rationals.
#pragma once

#include <map>

#include "rootdata.hpp"

namespace bqkz {

struct Laurent {
  std::map<IVec, Rat> terms;

  static Laurent mono(const IVec& exp, const Rat& c = Rat(1)) {
    Laurent f;
    if (c != 0) f.terms[exp] = c;
    return f;
  }
  static Laurent constant(int rank, const Rat& c) { return mono(IVec(rank, 0), c); }

  bool isZero() const { return terms.empty(); }

  void add(const IVec& exp, const Rat& c) {
    if (c == 0) return;
    auto it = terms.find(exp);
    if (it == terms.end()) {
      terms.emplace(exp, c);
    } else {
      it->second += c;
      if (it->second == 0) terms.erase(it);
    }
  }

  Laurent& operator+=(const Laurent& o) {
    for (const auto& [e, c] : o.terms) add(e, c);
    return *this;
  }
  Laurent operator+(const Laurent& o) const { Laurent r = *this; r += o; return r; }
  Laurent operator-() const {
    Laurent r = *this;
    for (auto& [e, c] : r.terms) c = -c;
    return r;
  }
  Laurent operator-(const Laurent& o) const { return *this + (-o); }
  Laurent operator*(const Laurent& o) const {
    Laurent r;
    for (const auto& [e1, c1] : terms)
      for (const auto& [e2, c2] : o.terms) r.add(ivAdd(e1, e2), c1 * c2);
    return r;
  }
  Laurent scaled(const Rat& c) const {
    Laurent r;
    if (c == 0) return r;
    for (const auto& [e, k] : terms) r.terms.emplace(e, k * c);
    return r;
  }
  bool operator==(const Laurent& o) const { return terms == o.terms; }

  // exponents e -> w(e) for a finite Weyl group element
  Laurent weylImage(const RootSystem& rs, int w) const {
    Laurent r;
    for (const auto& [e, c] : terms) r.add(rs.W.actWeight(w, e), c);
    return r;
  }
  // x^mu -> x^{-mu}
  Laurent inverted() const {
    Laurent r;
    for (const auto& [e, c] : terms) r.terms.emplace(ivNeg(e), c);
    return r;
  }

  // value at a torus point given by the coordinates t_i = t^{pi_i^vee}
  Rat evalAt(const std::vector<Rat>& t) const {
    Rat acc = 0;
    for (const auto& [e, c] : terms) {
      Rat m = c;
      for (size_t i = 0; i < t.size(); ++i) m *= ratPow(t[i], e[i]);
      acc += m;
    }
    return acc;
  }
};

}  // namespace bqkz
