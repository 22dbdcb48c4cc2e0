// q-difference reflection operators on the double torus: the two Cherednik
// realizations (x side with inverted multiplicities, y side with inverted q),
// the reflection-dropping residue map, Macdonald operators for monomial
// symmetric functions, the chi_+ functional, and the gamma-direction product
// formula.
#pragma once

#include "solver.hpp"

#include <functional>
#include <memory>

namespace bqkz {

struct ExprPole : std::runtime_error {
  ExprPole() : std::runtime_error("coefficient expression evaluated at a pole") {}
};

// coefficient expression: monomial c t^mu gamma^nu, sums, products, and
// reciprocals 1/(1 - c t^mu gamma^nu)
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;
struct Expr {
  enum class Kind { Mono, Sum, Prod, Recip };
  Kind kind;
  Rat c;
  IVec mu, nu;
  std::vector<ExprPtr> kids;
};
ExprPtr exprMono(const Rat& c, IVec mu, IVec nu);
ExprPtr exprRecip(const Rat& c, IVec mu, IVec nu);
ExprPtr exprSum(std::vector<ExprPtr> kids);
ExprPtr exprProd(std::vector<ExprPtr> kids);

// normal-ordered terms coeff(t,gamma) * (wx, wy); the x part acts on the
// first torus variable, the y part on the second through the sign-flip of
// translations
using DiffReflOp = std::map<std::pair<ExtAff, ExtAff>, ExprPtr>;

using PairFn = std::function<Rat(const TorusPoint&, const TorusPoint&)>;

class MacdonaldEngine {
 public:
  explicit MacdonaldEngine(const Connection& C);

  const Connection& conn() const { return *C_; }
  const HeckeAlgebra& xAlgebra() const { return Hx_; }     // multiplicities 1/k
  const HeckeAlgebra& yAlgebra() const { return C_->algebra(); }

  Rat evalExpr(const ExprPtr& e, const TorusPoint& t, const TorusPoint& g) const;

  DiffReflOp identityOp() const;
  DiffReflOp addOp(const DiffReflOp& a, const DiffReflOp& b) const;
  DiffReflOp scaleOp(const DiffReflOp& a, const Rat& c) const;
  DiffReflOp mulOp(const DiffReflOp& a, const DiffReflOp& b) const;

  // generator images k_i + c_i(X)(s_i - 1) in the side's parameter flavor
  DiffReflOp rhoGenerator(int i, bool xside) const;
  DiffReflOp rhoOmega(int idx, bool xside) const;
  DiffReflOp rhoOf(const HeckeElem& h, bool xside) const;  // h in the side's algebra

  DiffReflOp resMap(const DiffReflOp& op) const;  // drop finite reflection parts

  // Res of rho(m_lam(Y)) for anti-dominant lam, in the side's algebra
  DiffReflOp macdonaldOperator(const IVec& lam, bool xside) const;

  Rat applyOp(const DiffReflOp& op, const PairFn& f, const TorusPoint& t,
              const TorusPoint& g) const;
  // the two torus arguments a term sends (t, gamma) to
  std::pair<TorusPoint, TorusPoint> shiftedPoint(const ExtAff& wx, const ExtAff& wy,
                                                 const TorusPoint& t, const TorusPoint& g) const;

  Rat chiWeight(int w) const;  // k(w) = prod of k over the inversion set
  Rat chiPlus(const std::vector<Rat>& v) const;
  std::map<ExpKey, Rat> chiPlusSeries(const PsiSolution& sol) const;

  // product over positive roots of (q_a gamma^{a^vee}; q_a)oo divided by the
  // same with k_a^2 inserted, expanded to grade D
  std::map<IVec, Rat> kProductExpansion(long D) const;

  // chi_+ of the alpha = 0 slice against chiWeight(w0) times the product
  // expansion, exact
  bool verifyLeadingTerm(const PsiSolution& sol) const;

 private:
  const Connection* C_;
  ParameterField pfx_;
  HeckeAlgebra Hx_;

  ExprPtr wAct(const ExtAff& wx, const ExtAff& wy, const ExprPtr& e) const;
  Rat evalExprMemo(const ExprPtr& e, const TorusPoint& t, const TorusPoint& g,
                   std::map<const Expr*, Rat>& memo) const;
};

}  // namespace bqkz
