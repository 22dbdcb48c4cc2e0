#include "params.hpp"

namespace bqkz {

namespace {
// Exact e-th root of a positive rational, if one exists.
std::optional<Rat> exactRoot(const Rat& x, long e) {
  if (x <= 0) return std::nullopt;
  mpz_class num, den;
  if (!mpz_root(num.get_mpz_t(), x.get_num_mpz_t(), (unsigned long)e)) return std::nullopt;
  if (!mpz_root(den.get_mpz_t(), x.get_den_mpz_t(), (unsigned long)e)) return std::nullopt;
  Rat r(num, den);
  r.canonicalize();
  return r;
}
}  // namespace

ParameterField::ParameterField(const AffWeyl& aw, const Rat& qIn, std::vector<Rat> kByClass)
    : aw_(&aw), e_(aw.rs().latticeDenom), kByClass_(std::move(kByClass)) {
  if (qIn <= 0 || qIn >= 1) throw std::invalid_argument("q must lie strictly between 0 and 1");
  if ((int)kByClass_.size() != aw.classCount())
    throw std::invalid_argument("expected one k value per conjugacy class of simple affine reflections");
  for (const auto& k : kByClass_)
    if (k == 0) throw std::invalid_argument("multiplicity label k must be nonzero");
  auto root = exactRoot(qIn, e_);
  qbase_ = root ? *root : qIn;
  // k by squared gradient length (consistent by the class/length check in AffWeyl).
  for (int i = 0; i <= aw.rank(); ++i) kByLengthSq_[aw.generatorLengthSq(i)] = kGen(i);
  // Each finite root length must be covered (phi covers the long roots; short
  // simple roots cover the rest).
  for (const auto& r : aw.rs().posRoots)
    if (!kByLengthSq_.count(aw.rs().rootNormSq(r))) throw UnknownLength();
}

Rat ParameterField::qpow(const Rat& r) const {
  Rat er = r * e_;
  if (er.get_den() != 1) throw NonIntegralExponent();
  return ratPow(qbase_, (long)er.get_num().get_si());
}

Rat ParameterField::qAlpha(const IVec& root) const { return qAlphaPow(root, 1); }

Rat ParameterField::qAlphaPow(const IVec& root, long m) const {
  Rat lsq = aw_->rs().rootNormSq(root);
  Rat expo = Rat(2) / lsq;  // in {1, 2, 3}
  if (expo.get_den() != 1) throw UnknownLength();
  return ratPow(q(), (long)expo.get_num().get_si() * m);
}

Rat ParameterField::kRoot(const IVec& root) const {
  auto it = kByLengthSq_.find(aw_->rs().rootNormSq(root));
  if (it == kByLengthSq_.end()) throw UnknownLength();
  return it->second;
}

ParameterField ParameterField::withKs(std::vector<Rat> kByClass) const {
  ParameterField f(*this);
  f.kByClass_ = std::move(kByClass);
  if ((int)f.kByClass_.size() != aw_->classCount())
    throw std::invalid_argument("expected one k value per conjugacy class of simple affine reflections");
  f.kByLengthSq_.clear();
  for (int i = 0; i <= aw_->rank(); ++i) f.kByLengthSq_[aw_->generatorLengthSq(i)] = f.kGen(i);
  return f;
}

bool ParameterField::genericThrough(long bound) const {
  Rat qq = q();
  for (const auto& [lsq, k] : kByLengthSq_) {
    Rat k2 = k * k;
    Rat p(1);
    for (long n = 1; n <= 3 * bound + 3; ++n) {
      p *= qq;
      if (p * k2 == 1 || p == k2 || p * k2 * k2 == 1) return false;
    }
  }
  return true;
}

}  // namespace bqkz
