// gaussgeom: verification, decomposition and dimension tables for the invariant
// geometry of zero-mean Gaussian families.
//
// Exit codes: 0 all checks pass, 1 a check failed, 2 usage or parse error,
// 3 numerical breakdown (finite-difference stencil left the SPD cone).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "gaussgeom/suites.hpp"

namespace {

using namespace gaussgeom;

enum ExitCode { kPass = 0, kFail = 1, kUsage = 2, kBreakdown = 3 };

struct Output {
  std::string format = "json";
  std::string out;
  bool timings = false;
};

void add_run_flags(CLI::App* sub, RunConfig& cfg, std::string& abc_text, Output& output) {
  sub->add_option("--n", cfg.n, "matrix order")->check(CLI::PositiveNumber);
  sub->add_option("--alpha", cfg.alpha, "Amari-Chentsov alpha");
  sub->add_option("--abc", abc_text, "coordinates a,b,c of the invariant cubic family");
  sub->add_option("--seed", cfg.seed, "base RNG seed");
  sub->add_option("--tol-geom", cfg.tol_geom, "tolerance for finite-difference verdicts");
  sub->add_option("--tol-exact", cfg.tol_exact, "tolerance for algebraic identities");
  sub->add_option("--samples", cfg.samples, "Monte-Carlo sample count");
  sub->add_option("--fd-step", cfg.fd_step, "finite-difference base step, relative to lambda_min");
  sub->add_option("--trials", cfg.trials, "random trials per check");
  sub->add_option("--threads", cfg.threads, "Monte-Carlo worker threads (results do not depend on it)");
  sub->add_option("--format", output.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  sub->add_option("--out", output.out, "write the report here instead of stdout");
  sub->add_flag("--timings", output.timings, "include per-check wall times");
  sub->add_option("--inject-fault", cfg.fault)->group("");
}

std::array<double, 3> parse_abc(const std::string& text) {
  std::array<double, 3> abc{};
  std::istringstream in(text);
  std::string part;
  std::size_t i = 0;
  while (std::getline(in, part, ',')) {
    if (i == 3) throw CLI::ValidationError("--abc", "expected exactly three comma-separated values");
    try {
      std::size_t used = 0;
      abc[i] = std::stod(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw CLI::ValidationError("--abc", "not a number: '" + part + "'");
    }
    ++i;
  }
  if (i != 3) throw CLI::ValidationError("--abc", "expected exactly three comma-separated values");
  return abc;
}

void emit(const Report& report, const Output& output) {
  const std::string text = output.format == "csv" ? report_to_csv(report, output.timings)
                                                  : report_to_json(report, output.timings).dump(2) + "\n";
  if (output.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(output.out);
  if (!f) throw gaussgeom::ParseError("cannot open '" + output.out + "' for writing");
  f << text;
}

int verdict_code(const Report& r) { return r.overall_pass() ? kPass : kFail; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant statistical geometry of zero-mean Gaussian families"};
  app.require_subcommand(1);

  RunConfig cfg;
  std::string abc_text;
  Output output;

  auto* verify = app.add_subcommand("verify", "run the full verification suite");
  add_run_flags(verify, cfg, abc_text, output);

  auto* mc = app.add_subcommand("mc-check", "Monte-Carlo score-moment checks of the closed forms");
  add_run_flags(mc, cfg, abc_text, output);

  std::string input_path;
  std::string poly_out;
  auto* dec = app.add_subcommand("decompose", "decompose an invariant cubic tensor into power sums");
  add_run_flags(dec, cfg, abc_text, output);
  dec->add_option("input,--in", input_path, "RawCubicTensor JSON file")->required();
  dec->add_option("--poly-out", poly_out, "write the SymCubicPoly JSON here");

  int max_n = 8;
  auto* dims = app.add_subcommand("dims", "dimension of the invariant cubic family per n");
  dims->add_option("--max-n", max_n, "largest order")->check(CLI::PositiveNumber);
  dims->add_option("--format", output.format, "report format")->check(CLI::IsMember({"json", "csv"}));
  dims->add_option("--out", output.out, "write the report here instead of stdout");

  try {
    app.parse(argc, argv);
    if (!abc_text.empty()) cfg.abc = parse_abc(abc_text);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*dims) {
      const Report r = run_dims(max_n);
      emit(r, output);
      return verdict_code(r);
    }
    cfg.validate();
    if (*verify) {
      const Report r = run_verify(cfg);
      emit(r, output);
      return verdict_code(r);
    }
    if (*mc) {
      const Report r = run_mc_check(cfg);
      emit(r, output);
      return verdict_code(r);
    }
    if (*dec) {
      std::ifstream in(input_path);
      if (!in) throw gaussgeom::ParseError("cannot open '" + input_path + "'");
      Json j;
      try {
        j = Json::parse(in);
      } catch (const nlohmann::json::exception& e) {
        throw gaussgeom::ParseError(std::string("invalid JSON: ") + e.what());
      }
      const DecomposeResult res = run_decompose(raw_cubic_from_json(j), cfg);
      emit(res.report, output);
      if (res.polynomial && !poly_out.empty()) {
        std::ofstream f(poly_out);
        if (!f) throw gaussgeom::ParseError("cannot open '" + poly_out + "' for writing");
        f << to_json(*res.polynomial).dump(2) << "\n";
      }
      return verdict_code(res.report);
    }
  } catch (const gaussgeom::StepTooLarge& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return kBreakdown;
  } catch (const gaussgeom::DomainError& e) {
    std::cerr << "numerical breakdown: " << e.what() << "\n";
    return kBreakdown;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const gaussgeom::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
