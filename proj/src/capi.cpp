#include "bqkz.h"

#include <cstdlib>
#include <cstring>
#include <memory>

#include "bqkz/verify.hpp"

using namespace bqkz;

struct bqkz_ctx {
  char type;
  int rank;
  Rat q;
  std::vector<Rat> ks;
  std::unique_ptr<RootSystem> rs;
  std::unique_ptr<AffWeyl> aw;
  std::unique_ptr<ParameterField> pf;
  std::unique_ptr<HeckeAlgebra> H;
  std::unique_ptr<Connection> C;
  std::unique_ptr<MacdonaldEngine> M;
  std::unique_ptr<NumericEvaluator> N;
  std::unique_ptr<PsiSolution> sol;
  std::string error;
};

namespace {

int fail(bqkz_ctx* ctx, int code, const std::string& msg) {
  if (ctx) ctx->error = msg;
  return code;
}

char* dupString(const std::string& s) {
  char* p = (char*)std::malloc(s.size() + 1);
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

int parsePoint(const bqkz_ctx* ctx, const char* const* coords, TorusPoint& out) {
  out.clear();
  for (int i = 0; i < ctx->rank; ++i) {
    if (!coords[i]) return BQKZ_EINVAL;
    Rat c = parseRat(coords[i]);
    if (c == 0) return BQKZ_EINVAL;
    out.push_back(c);
  }
  return BQKZ_OK;
}

}  // namespace

extern "C" {

int bqkz_class_count(char type, int rank) {
  try {
    RootSystem rs = RootSystem::build(type, rank);
    AffWeyl aw(rs);
    return aw.classCount();
  } catch (const std::exception&) {
    return -1;
  }
}

int bqkz_ctx_create(char type, int rank, const char* q, const char* const* k, int nk,
                    bqkz_ctx** out) {
  if (!q || !k || !out) return BQKZ_EINVAL;
  *out = nullptr;
  auto ctx = std::make_unique<bqkz_ctx>();
  try {
    ctx->type = type;
    ctx->rank = rank;
    ctx->q = parseRat(q);
    if (!(ctx->q > 0 && ctx->q < 1)) throw std::invalid_argument("qbase must lie in (0,1)");
    for (int i = 0; i < nk; ++i) {
      if (!k[i]) throw std::invalid_argument("missing k entry");
      Rat kv = parseRat(k[i]);
      if (kv == 0) throw std::invalid_argument("k must be nonzero");
      ctx->ks.push_back(kv);
    }
    ctx->rs = std::make_unique<RootSystem>(RootSystem::build(type, rank));
    ctx->aw = std::make_unique<AffWeyl>(*ctx->rs);
    if (nk != ctx->aw->classCount())
      throw std::invalid_argument("expected " + std::to_string(ctx->aw->classCount()) +
                                  " multiplicity labels");
    ctx->pf = std::make_unique<ParameterField>(*ctx->aw, ctx->q, ctx->ks);
    ctx->H = std::make_unique<HeckeAlgebra>(*ctx->pf);
    ctx->C = std::make_unique<Connection>(*ctx->H);
    ctx->M = std::make_unique<MacdonaldEngine>(*ctx->C);
    ctx->N = std::make_unique<NumericEvaluator>(*ctx->M);
  } catch (const std::exception& e) {
    ctx->error = e.what();
    *out = ctx.release();
    return BQKZ_EINVAL;
  }
  *out = ctx.release();
  return BQKZ_OK;
}

void bqkz_ctx_destroy(bqkz_ctx* ctx) { delete ctx; }

const char* bqkz_error_message(const bqkz_ctx* ctx) { return ctx ? ctx->error.c_str() : ""; }

int bqkz_solve(bqkz_ctx* ctx, long degree) {
  if (!ctx || degree < 0) return BQKZ_EINVAL;
  try {
    SeriesRing S(*ctx->C, degree);
    ctx->sol = std::make_unique<PsiSolution>(PsiSolver(S).solvePsi());
    return BQKZ_OK;
  } catch (const ResonantParameters& e) {
    return fail(ctx, BQKZ_EDOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(ctx, BQKZ_EINTERNAL, e.what());
  }
}

int bqkz_psi_json(bqkz_ctx* ctx, char** json_out) {
  if (!ctx || !json_out) return BQKZ_EINVAL;
  if (!ctx->sol) return fail(ctx, BQKZ_EINVAL, "no solved series; call bqkz_solve first");
  try {
    Json j{{"degree", ctx->sol->D}, {"basisDim", (long)ctx->rs->W.size()}};
    Json entries = Json::array();
    for (const auto& [key, coeffs] : ctx->sol->K) {
      Json vec = Json::array();
      for (const Rat& c : coeffs) vec.push_back(ratStr(c));
      entries.push_back(Json{{"alpha", key.first}, {"beta", key.second}, {"vector", vec}});
    }
    j["coefficients"] = entries;
    *json_out = dupString(j.dump(2));
    return BQKZ_OK;
  } catch (const std::exception& e) {
    return fail(ctx, BQKZ_EINTERNAL, e.what());
  }
}

int bqkz_verify_json(bqkz_ctx* ctx, long degree, unsigned long seed, int samples, int* all_pass,
                     char** json_out) {
  if (!ctx || !all_pass || !json_out || degree < 0 || samples <= 0) return BQKZ_EINVAL;
  try {
    VerifyOptions opt;
    opt.degree = degree;
    opt.seed = seed;
    opt.samples = samples;
    Json report = runVerify(ctx->type, ctx->rank, ctx->q, ctx->ks, opt);
    *all_pass = allPass(report) ? 1 : 0;
    *json_out = dupString(report.dump(2));
    return BQKZ_OK;
  } catch (const std::exception& e) {
    return fail(ctx, BQKZ_EINTERNAL, e.what());
  }
}

int bqkz_eval_phiplus(bqkz_ctx* ctx, const char* const* t, const char* const* g, double* value,
                      double* bound, int* near_pole) {
  if (!ctx || !t || !g || !value || !bound || !near_pole) return BQKZ_EINVAL;
  if (!ctx->sol) return fail(ctx, BQKZ_EINVAL, "no solved series; call bqkz_solve first");
  try {
    TorusPoint tp, gp;
    if (parsePoint(ctx, t, tp) != BQKZ_OK || parsePoint(ctx, g, gp) != BQKZ_OK)
      return fail(ctx, BQKZ_EINVAL, "coordinates must be nonzero rationals");
    *near_pole = ctx->C->inSingularSet(tp, false) || ctx->C->inSingularSet(gp, true) ? 1 : 0;
    ScalarValue v = ctx->N->evalPhiPlus(tp, gp, *ctx->sol);
    *value = v.value;
    *bound = v.bound;
    return BQKZ_OK;
  } catch (const std::invalid_argument& e) {
    return fail(ctx, BQKZ_EINVAL, e.what());
  } catch (const GaugeSingular& e) {
    return fail(ctx, BQKZ_EDOMAIN, e.what());
  } catch (const std::runtime_error& e) {
    return fail(ctx, BQKZ_EDOMAIN, e.what());
  } catch (const std::exception& e) {
    return fail(ctx, BQKZ_EINTERNAL, e.what());
  }
}

void bqkz_string_free(char* s) { std::free(s); }

}  // extern "C"
