// cartansym: check whether a vector field generates a symmetry of a geometry.
//
// Exit codes: 0 symmetric (or all rows pass), 1 not symmetric (or an oracle
// row fails), 2 inconclusive or the two modes disagree, 3 input error.

#include <CLI11.hpp>
#include <cstdio>
#include <string>

#include "cartansym/cartansym.h"

namespace {

constexpr int kExitSymmetric = 0;
constexpr int kExitNotSymmetric = 1;
constexpr int kExitUndecided = 2;
constexpr int kExitInput = 3;

int report_error(cs_status s) {
  std::fprintf(stderr, "cartansym: %s error: %s\n", cs_status_name(s), cs_last_error());
  return kExitInput;
}

int print_text(cs_status s, cs_text* text) {
  if (s != CS_OK) return report_error(s);
  std::fputs(cs_text_data(text), stdout);
  cs_text_free(text);
  return kExitSymmetric;
}

int run_check(const std::string& geometry, const std::string& vector, const cs_check_config& cfg, bool json) {
  cs_geometry* g = nullptr;
  cs_vector* v = nullptr;
  cs_report* r = nullptr;
  cs_status s = cs_geometry_load(geometry.c_str(), &g);
  if (s == CS_OK) s = cs_vector_load(vector.c_str(), &v);
  if (s == CS_OK) s = cs_check(g, v, &cfg, &r);
  int code = kExitInput;
  if (s != CS_OK) {
    report_error(s);
  } else {
    std::fputs(json ? cs_report_json(r) : cs_report_text(r), stdout);
    switch (cs_report_verdict(r)) {
      case CS_SYMMETRIC: code = kExitSymmetric; break;
      case CS_NOT_SYMMETRIC: code = kExitNotSymmetric; break;
      default: code = kExitUndecided; break;
    }
  }
  cs_report_free(r);
  cs_vector_free(v);
  cs_geometry_free(g);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Verify symmetries of geometries, directly and on the frame bundle"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(cs_version()));

  cs_check_config cfg;
  cs_check_config_default(&cfg);
  std::string geometry, vector, mode = "direct", format = "text";

  auto add_sampling = [&](CLI::App* sub) {
    sub->add_option("--tol", cfg.tolerance, "Tolerance on normalized residuals")->check(CLI::PositiveNumber);
    sub->add_option("--samples", cfg.samples, "Base points")->check(CLI::Range(1u, 100000u));
    sub->add_option("--frames", cfg.frames, "Frames (or velocities) per base point")->check(CLI::Range(1u, 10000u));
    sub->add_option("--seed", cfg.seed, "Sampling seed");
    sub->add_option("--threads", cfg.threads, "Worker threads (0: automatic)");
  };
  auto add_format = [&](CLI::App* sub) {
    sub->add_option("--report", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* check = app.add_subcommand("check", "Check one geometry / vector field pair");
  check->add_option("--geometry", geometry, "Catalog name or definition file")->required();
  check->add_option("--vector", vector, "Catalog name or definition file")->required();
  check->add_option("--mode", mode, "direct, cartan or both")->check(CLI::IsMember({"direct", "cartan", "both"}));
  add_sampling(check);
  add_format(check);

  auto* matrix = app.add_subcommand("matrix", "Run both modes over every catalog pair with a Cartan model");
  add_sampling(matrix);
  add_format(matrix);

  std::uint32_t points = 10;
  auto* oracle = app.add_subcommand("oracle", "Compare the jet Lie derivative with a flow pullback");
  oracle->add_option("--geometry", geometry, "Riemannian geometry (default: builtin pair set)");
  oracle->add_option("--vector", vector, "Vector field");
  oracle->add_option("--points", points, "Base points per pair")->check(CLI::Range(1u, 10000u));
  oracle->add_option("--seed", cfg.seed, "Sampling seed");
  add_format(oracle);

  auto* list = app.add_subcommand("list", "List catalog geometries and vector fields");
  add_format(list);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }
  const bool json = format == "json";

  if (*check) {
    cfg.mode = mode == "direct" ? CS_MODE_DIRECT : mode == "cartan" ? CS_MODE_CARTAN : CS_MODE_BOTH;
    return run_check(geometry, vector, cfg, json);
  }
  if (*matrix) {
    cs_text* text = nullptr;
    int agree = 0;
    const cs_status s = cs_catalog_matrix(&cfg, json, &text, &agree);
    const int code = print_text(s, text);
    return code != kExitSymmetric ? code : (agree ? kExitSymmetric : kExitUndecided);
  }
  if (*oracle) {
    if (geometry.empty() != vector.empty()) {
      std::fprintf(stderr, "cartansym: oracle needs both --geometry and --vector, or neither\n");
      return kExitInput;
    }
    cs_text* text = nullptr;
    int pass = 0;
    const cs_status s = cs_oracle_table(geometry.empty() ? nullptr : geometry.c_str(),
                                        vector.empty() ? nullptr : vector.c_str(), points, cfg.seed, json, &text, &pass);
    const int code = print_text(s, text);
    return code != kExitSymmetric ? code : (pass ? kExitSymmetric : kExitNotSymmetric);
  }
  cs_text* text = nullptr;
  const cs_status s = cs_catalog_list(json, &text);
  return print_text(s, text);
}
