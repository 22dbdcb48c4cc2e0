// Dependency-ordered verification pipeline producing a machine-readable
// report: one record per identity with status, sample count, worst residual
// and the a-priori bound it was compared against.
#pragma once

#include <json.hpp>

#include "numeric.hpp"

namespace bqkz {

using Json = nlohmann::ordered_json;

struct VerifyOptions {
  long degree = 3;
  unsigned long seed = 1;
  int samples = 20;
};

// full report: {"config": {...}, "results": [{suite, identity, status,
// samples, maxResidual, bound, seed}, ...]}
Json runVerify(char type, int rank, const Rat& qIn, const std::vector<Rat>& ks,
               const VerifyOptions& opt);

bool allPass(const Json& report);

}  // namespace bqkz
