// Parameter configuration: the exact rational q^(1/e) and the multiplicity
// label k, constant on conjugacy classes of the simple affine reflections.
#pragma once

#include "affweyl.hpp"

namespace bqkz {

struct NonIntegralExponent : std::runtime_error {
  NonIntegralExponent() : std::runtime_error("q-exponent outside the supported lattice of powers") {}
};
struct UnknownLength : std::runtime_error {
  UnknownLength() : std::runtime_error("unsupported squared root length") {}
};

class ParameterField {
 public:
  // qIn is interpreted as q when it has an exact rational e-th root (then
  // qbase = qIn^(1/e)); otherwise qIn itself is taken as qbase (so q = qIn^e).
  // kByClass must have one entry per conjugacy class of {s_0..s_N}.
  ParameterField(const AffWeyl& aw, const Rat& qIn, std::vector<Rat> kByClass);

  const AffWeyl& aw() const { return *aw_; }
  const Rat& qbase() const { return qbase_; }
  long e() const { return e_; }
  Rat q() const { return ratPow(qbase_, e_); }

  // q^r for rational r with e*r integral.
  Rat qpow(const Rat& r) const;
  // q_alpha = q^(2/|alpha|^2) for a finite root, and its integer powers.
  Rat qAlpha(const IVec& root) const;
  Rat qAlphaPow(const IVec& root, long m) const;

  Rat kGen(int i) const { return kByClass_[aw_->generatorClass(i)]; }
  Rat kRoot(const IVec& root) const;  // by root length
  Rat kAffine(const AffRoot& a) const { return kRoot(a.alpha); }

  // No resonance q^n k_alpha^2 = 1 or q^n = k_alpha^2 for 1 <= n <= bound.
  bool genericThrough(long bound) const;

  // Same q^(1/e), different multiplicity labels.
  ParameterField withKs(std::vector<Rat> kByClass) const;

 private:
  const AffWeyl* aw_;
  Rat qbase_;
  long e_;
  std::vector<Rat> kByClass_;
  std::map<Rat, Rat> kByLengthSq_;
};

}  // namespace bqkz
