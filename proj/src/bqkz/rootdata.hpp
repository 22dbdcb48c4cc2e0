// Finite irreducible reduced root systems: Cartan data, lattices P^vee / Q^vee,
// the finite Weyl group with cached reduced words, dominance and saturated sets.
#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>

#include "linalg.hpp"
#include "rat.hpp"

namespace bqkz {

// Finite Weyl group tabulated by breadth-first search over generator actions.
// Element 0 is the identity; elements are ordered by (length, lex reduced word).
struct WeylGroup {
  int rank = 0;
  std::vector<std::vector<int>> words;   // lex-minimal reduced word per element
  std::vector<IVec> wtAct;               // row-major N*N matrix on coweight coords
  std::vector<IVec> rtAct;               // row-major N*N matrix on root coords
  std::vector<std::vector<int>> lmul;    // lmul[j][u] = index of s_{j+1} * u
  std::vector<std::vector<int>> rmul;    // rmul[j][u] = index of u * s_{j+1}
  std::vector<int> inverse;
  std::vector<int> length;
  int w0 = 0;

  int size() const { return (int)words.size(); }
  int mul(int a, int b) const;
  bool leftDescent(int j, int u) const { return length[lmul[j][u]] < length[u]; }
  bool rightDescent(int j, int u) const { return length[rmul[j][u]] < length[u]; }
  IVec actWeight(int w, const IVec& lam) const;  // coweight coords
  IVec actRoot(int w, const IVec& root) const;   // simple-root coords
  bool bruhatLeq(int u, int w) const;            // subword/Bruhat order
};

struct RootSystem {
  char type = 'A';
  int rank = 0;
  std::string label;

  std::vector<IVec> cartan;    // a[i][j] = <alpha_i, alpha_j^vee>
  std::vector<Rat> lengthSq;   // squared length per simple root, long roots = 2
  std::vector<IVec> posRoots;  // simple-root coordinates, by increasing height
  IVec highestRoot;

  RatMat coweightGram;  // <pi_i^vee, pi_j^vee>
  RatMat cartanInv;     // inverse of the Cartan matrix a[i][j]
  long latticeDenom = 1;  // minimal e with e*<P^vee,P^vee> integral

  WeylGroup W;

  static RootSystem build(char type, int rank);

  // --- pairings, coordinates ---
  // lam given by coords <lam, alpha_i>; roots by simple-root coords.
  Rat pairRootCoweight(const IVec& lam, const IVec& root) const;  // <lam, root>
  Rat innerCoweight(const IVec& lam, const IVec& mu) const;       // <lam, mu>
  Rat rootNormSq(const IVec& root) const;
  IVec corootOf(const IVec& root) const;        // alpha^vee as coweight coords
  std::vector<Rat> corootCoords(const IVec& lam) const;  // lam = sum d_r alpha_r^vee
  Rat height(const IVec& lam) const;            // sum of coroot coordinates
  bool inCorootLattice(const IVec& lam) const;
  bool inPositiveCorootCone(const IVec& lam) const;  // integral and nonnegative
  bool isDominant(const IVec& lam) const;

  // --- Weyl action helpers ---
  IVec fundamentalCoweight(int i) const;
  IVec simpleReflect(int i, const IVec& lam) const;
  // (lamPlus, vbar) with vbar the shortest element sending lamPlus to lam.
  std::pair<IVec, int> dominantRep(const IVec& lam) const;
  int reflectionOf(const IVec& root) const;  // W index of s_root
  std::set<IVec> weylOrbit(const IVec& lam) const;
  std::set<IVec> saturatedSet(const IVec& lam) const;
  bool dominanceLeq(const IVec& lam, const IVec& mu) const;  // both dominant
  bool extendedOrder(const IVec& lam, const IVec& mu) const; // lam <= mu in the orbit order
};

}  // namespace bqkz
