// Command-line front end. Talks to the core exclusively through the C API.
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "bqkz.h"

namespace {

struct RunConfig {
  std::string type = "A";
  int rank = 1;
  std::string q = "1/4";
  std::vector<std::string> k;
  long degree = 3;
  unsigned long seed = 1;
  int samples = 20;
  std::string out;
};

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitConfig = 2;

void addCommonFlags(CLI::App* cmd, RunConfig& cfg) {
  cmd->add_option("--type", cfg.type, "root system type, one of A..G")
      ->check(CLI::IsMember({"A", "B", "C", "D", "E", "F", "G"}));
  cmd->add_option("--rank", cfg.rank, "rank of the root system")->check(CLI::PositiveNumber);
  cmd->add_option("--q", cfg.q, "step parameter as a rational string in (0,1)");
  cmd->add_option("--k", cfg.k, "multiplicity per class, rational strings (default: all 3)");
  cmd->add_option("--degree", cfg.degree, "series truncation degree")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--seed", cfg.seed, "sampling seed");
  cmd->add_option("--out", cfg.out, "output path (default: stdout)");
  cmd->set_config("--config", "", "key=value config file overriding the flags above");
}

void writeOut(const RunConfig& cfg, const std::string& text) {
  if (cfg.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(cfg.out, std::ios::binary);
  if (!f) throw CLI::RuntimeError("cannot open output path: " + cfg.out, kExitConfig);
  f << text;
}

struct CtxDeleter {
  void operator()(bqkz_ctx* c) const { bqkz_ctx_destroy(c); }
};
using CtxPtr = std::unique_ptr<bqkz_ctx, CtxDeleter>;

// Builds the context, filling in default multiplicities; exits with a
// configuration diagnostic on rejection.
CtxPtr makeContext(RunConfig& cfg) {
  const char type = cfg.type[0];
  const int nk = bqkz_class_count(type, cfg.rank);
  if (nk < 0)
    throw CLI::RuntimeError("unsupported root system " + cfg.type + std::to_string(cfg.rank),
                            kExitConfig);
  if (cfg.k.empty()) cfg.k.assign(nk, "3");
  if ((int)cfg.k.size() != nk)
    throw CLI::RuntimeError("k expects " + std::to_string(nk) + " entries for " + cfg.type +
                                std::to_string(cfg.rank) + ", got " + std::to_string(cfg.k.size()),
                            kExitConfig);
  std::vector<const char*> ks;
  for (const auto& s : cfg.k) ks.push_back(s.c_str());
  bqkz_ctx* raw = nullptr;
  int rc = bqkz_ctx_create(type, cfg.rank, cfg.q.c_str(), ks.data(), nk, &raw);
  CtxPtr ctx(raw);
  if (rc != BQKZ_OK) {
    std::string msg = ctx ? bqkz_error_message(ctx.get()) : "invalid configuration";
    throw CLI::RuntimeError("error: " + msg, kExitConfig);
  }
  return ctx;
}

std::string takeString(char* s) {
  std::string out = s ? s : "";
  bqkz_string_free(s);
  return out;
}

int runVerifyCmd(RunConfig& cfg, bool humanReadable) {
  CtxPtr ctx = makeContext(cfg);
  int all = 0;
  char* json = nullptr;
  int rc = bqkz_verify_json(ctx.get(), cfg.degree, cfg.seed, cfg.samples, &all, &json);
  if (rc != BQKZ_OK) {
    // Always leave a (partial) machine-readable record behind.
    writeOut(cfg, std::string("{\"version\":1,\"error\":\"") + bqkz_error_message(ctx.get()) +
                      "\"}\n");
    std::cerr << "error: " << bqkz_error_message(ctx.get()) << "\n";
    return kExitFail;
  }
  std::string report = takeString(json);
  if (!humanReadable) {
    writeOut(cfg, report + "\n");
  } else {
    // Minimal structural scan of the report: one line per identity record.
    std::ostringstream os;
    os << cfg.type << cfg.rank << "  q=" << cfg.q << "  degree=" << cfg.degree
       << "  seed=" << cfg.seed << "\n";
    std::istringstream is(report);
    auto field = [](const std::string& line) {
      auto a = line.find(": \"");
      auto b = line.rfind('"');
      return line.substr(a + 3, b - a - 3);
    };
    std::string line, suite, identity, status, residual, bound;
    int passed = 0, failed = 0;
    while (std::getline(is, line)) {
      if (line.find("\"suite\"") != std::string::npos) suite = field(line);
      if (line.find("\"identity\"") != std::string::npos) identity = field(line);
      if (line.find("\"maxResidual\"") != std::string::npos) residual = field(line);
      if (line.find("\"bound\"") != std::string::npos) bound = field(line);
      if (line.find("\"status\"") != std::string::npos) {
        status = field(line);
        (status == "pass" ? passed : failed)++;
        os << (status == "pass" ? "  PASS  " : "  FAIL  ") << suite << " / " << identity << "\n";
      }
    }
    os << (all ? "all " : "FAILURES: ") << passed << " passed, " << failed << " failed\n";
    writeOut(cfg, os.str());
  }
  return all ? kExitPass : kExitFail;
}

int runPsiCmd(RunConfig& cfg) {
  CtxPtr ctx = makeContext(cfg);
  int rc = bqkz_solve(ctx.get(), cfg.degree);
  if (rc == BQKZ_EDOMAIN)
    throw CLI::RuntimeError(std::string("error: ") + bqkz_error_message(ctx.get()), kExitConfig);
  if (rc != BQKZ_OK) {
    std::cerr << "error: " << bqkz_error_message(ctx.get()) << "\n";
    return kExitFail;
  }
  char* json = nullptr;
  if (bqkz_psi_json(ctx.get(), &json) != BQKZ_OK) {
    std::cerr << "error: " << bqkz_error_message(ctx.get()) << "\n";
    return kExitFail;
  }
  writeOut(cfg, takeString(json) + "\n");
  return kExitPass;
}

std::vector<std::string> splitCoords(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

int runEvalCmd(RunConfig& cfg, const std::vector<std::string>& ts,
               const std::vector<std::string>& gs) {
  if (ts.size() != gs.size() || ts.empty())
    throw CLI::RuntimeError("eval needs matching --t/--g coordinate lists", kExitConfig);
  CtxPtr ctx = makeContext(cfg);
  int rc = bqkz_solve(ctx.get(), cfg.degree);
  if (rc != BQKZ_OK)
    throw CLI::RuntimeError(std::string("error: ") + bqkz_error_message(ctx.get()),
                            rc == BQKZ_EDOMAIN ? kExitConfig : kExitFail);
  std::ostringstream csv;
  csv << "t,g,value,bound,nearPole\n";
  csv.precision(17);
  for (size_t p = 0; p < ts.size(); ++p) {
    auto tc = splitCoords(ts[p]);
    auto gc = splitCoords(gs[p]);
    if ((int)tc.size() != cfg.rank || (int)gc.size() != cfg.rank)
      throw CLI::RuntimeError("point " + std::to_string(p) + " needs " +
                                  std::to_string(cfg.rank) + " coordinates per side",
                              kExitConfig);
    std::vector<const char*> tp, gp;
    for (auto& c : tc) tp.push_back(c.c_str());
    for (auto& c : gc) gp.push_back(c.c_str());
    double value = 0, bound = 0;
    int nearPole = 0;
    rc = bqkz_eval_phiplus(ctx.get(), tp.data(), gp.data(), &value, &bound, &nearPole);
    if (rc == BQKZ_EINVAL)
      throw CLI::RuntimeError(std::string("error: ") + bqkz_error_message(ctx.get()),
                              kExitConfig);
    csv << '"' << ts[p] << "\",\"" << gs[p] << "\",";
    if (rc == BQKZ_OK)
      csv << value << ',' << bound << ',' << nearPole << "\n";
    else
      csv << "NA,NA,1\n";  // domain failure: on or next to the pole locus
  }
  writeOut(cfg, csv.str());
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact q-difference kernel toolbox"};
  app.require_subcommand(1);

  // Worker cap, accepted for forward compatibility; the pipeline runs
  // sequentially so any positive cap behaves identically today.
  if (const char* w = std::getenv("BQKZ_MAX_WORKERS")) {
    char* end = nullptr;
    long n = std::strtol(w, &end, 10);
    if (!end || *end || n <= 0) {
      std::cerr << "error: BQKZ_MAX_WORKERS must be a positive integer\n";
      return kExitConfig;
    }
  }

  RunConfig cfg;
  std::vector<std::string> ts, gs;

  CLI::App* verify = app.add_subcommand("verify", "run the verification pipeline, emit JSON");
  addCommonFlags(verify, cfg);
  verify->add_option("--samples", cfg.samples, "sample count per pointwise identity")
      ->check(CLI::PositiveNumber);

  CLI::App* psi = app.add_subcommand("psi", "solve and print the exact coefficient table");
  addCommonFlags(psi, cfg);

  CLI::App* eval = app.add_subcommand("eval", "evaluate the solution at rational points (CSV)");
  addCommonFlags(eval, cfg);
  eval->add_option("--t", ts, "first-side point, comma-separated rational coordinates")
      ->required();
  eval->add_option("--g", gs, "second-side point, comma-separated rational coordinates")
      ->required();

  CLI::App* report = app.add_subcommand("report", "verification summary, human-readable");
  addCommonFlags(report, cfg);
  report->add_option("--samples", cfg.samples, "sample count per pointwise identity")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    if (verify->parsed()) return runVerifyCmd(cfg, false);
    if (psi->parsed()) return runPsiCmd(cfg);
    if (eval->parsed()) return runEvalCmd(cfg, ts, gs);
    if (report->parsed()) return runVerifyCmd(cfg, true);
  } catch (const CLI::RuntimeError& e) {
    std::cerr << e.what() << "\n";
    return e.get_exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitConfig;
}
