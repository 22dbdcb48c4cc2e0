// Extended affine Weyl group W = W0 x| P^vee: affine roots, length, reduced
// words with Omega parts, inversion sets, Bruhat order, generator conjugacy.
#pragma once

#include "rootdata.hpp"

namespace bqkz {

// Affine root a = alpha + level*c, alpha in simple-root coordinates.
struct AffRoot {
  IVec alpha;
  long level = 0;
  bool operator==(const AffRoot& o) const { return alpha == o.alpha && level == o.level; }
  bool operator<(const AffRoot& o) const { return std::tie(level, alpha) < std::tie(o.level, o.alpha); }
};

// w = t(lambda) * v in normal form; lambda in coweight coordinates, v a W0 index.
struct ExtAff {
  IVec lambda;
  int v = 0;
  bool operator==(const ExtAff& o) const { return v == o.v && lambda == o.lambda; }
  bool operator<(const ExtAff& o) const { return std::tie(lambda, v) < std::tie(o.lambda, o.v); }
};

struct ReducedWord {
  int omega = 0;              // index into AffWeyl::omega
  std::vector<int> letters;   // indices in {0..N}; w = omega * s_{l1} * ... * s_{lL}
};

class AffWeyl {
 public:
  explicit AffWeyl(const RootSystem& rs);

  const RootSystem& rs() const { return *rs_; }
  int rank() const { return rs_->rank; }

  ExtAff identity() const { return ExtAff{IVec(rs_->rank, 0), 0}; }
  ExtAff translation(const IVec& lam) const { return ExtAff{lam, 0}; }
  ExtAff finite(int w) const { return ExtAff{IVec(rs_->rank, 0), w}; }
  ExtAff simpleAffine(int i) const;        // s_i, i in 0..N
  AffRoot simpleAffineRoot(int i) const;   // a_i

  ExtAff mul(const ExtAff& a, const ExtAff& b) const;
  ExtAff inv(const ExtAff& a) const;
  AffRoot act(const ExtAff& w, const AffRoot& a) const;
  static bool gradientNegative(const AffRoot& a);
  static bool isPositive(const AffRoot& a);  // a in S_+

  long length(const ExtAff& w) const;
  std::vector<AffRoot> inversionSet(const ExtAff& w) const;  // S(w) = S_+ /\ w^{-1} S_-
  ReducedWord reducedWord(const ExtAff& w) const;            // memoized
  ExtAff evalWord(const ReducedWord& rw) const;

  int omegaCount() const { return (int)omega_.size(); }
  const ExtAff& omegaElem(int idx) const { return omega_[idx]; }
  const std::vector<int>& omegaPermutation(int idx) const { return omegaPerm_[idx]; }
  int omegaIndexOf(const ExtAff& w) const;  // -1 if not length zero / not in Omega

  bool bruhatLeq(const ExtAff& a, const ExtAff& b) const;

  // Conjugacy classes of the simple affine reflections s_0..s_N (for multiplicity labels).
  int generatorClass(int i) const { return genClass_[i]; }
  int classCount() const { return classCount_; }
  // squared length of the gradient root of a_i (phi for i = 0)
  Rat generatorLengthSq(int i) const;

 private:
  const RootSystem* rs_;
  std::vector<ExtAff> omega_;
  std::vector<std::vector<int>> omegaPerm_;
  std::vector<int> genClass_;
  int classCount_ = 0;
  mutable std::map<ExtAff, ReducedWord> wordCache_;
};

}  // namespace bqkz
