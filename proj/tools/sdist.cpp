// Command-line front end. Every subcommand prints JSON on stdout.
//
// Exit codes: 0 success, 1 a theorem check failed although its hypothesis
// holds, 2 usage or input error, 3 numerical failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "sdist/bounds.hpp"
#include "sdist/certificate.hpp"
#include "sdist/embed.hpp"
#include "sdist/error.hpp"
#include "sdist/inverse.hpp"
#include "sdist/pointset.hpp"
#include "sdist/ratios.hpp"
#include "sdist/search.hpp"
#include "sdist/serialize.hpp"

namespace {

using namespace sdist;

constexpr int kExitOk = 0;
constexpr int kExitViolation = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct Globals {
  double tol = kDefaultGroupingTol;
  double tol_int = kDefaultIntegralityTol;
  double tol_rank = kDefaultRankTol;
  bool pretty = false;
  unsigned long long seed = 0;  // reserved for randomized checks; no subcommand draws randomness yet
  std::string output;
};

void emit(const Globals& g, const Json& payload) {
  const std::string text = dump_json(payload, g.pretty);
  if (g.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(g.output);
  if (!out) throw Error(ErrorKind::parse, "cannot write " + g.output);
  out << text;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::parse, "cannot open " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

SettingChoice parse_choice(const std::string& name) {
  if (name == "auto") return SettingChoice::automatic;
  if (name == "euclidean") return SettingChoice::euclidean;
  if (name == "spherical") return SettingChoice::spherical;
  if (name == "antipodal") return SettingChoice::antipodal;
  throw Error(ErrorKind::parameter, "unknown setting '" + name + "'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Integrality certificates and ratio inversion for s-distance sets"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--tol", g.tol, "relative grouping tolerance for distances")->capture_default_str();
  app.add_option("--tol-int", g.tol_int, "integrality tolerance")->capture_default_str();
  app.add_option("--tol-rank", g.tol_rank, "rank tolerance (times n * sigma_max)")->capture_default_str();
  app.add_flag("--json-pretty", g.pretty, "indent JSON output");
  app.add_option("--seed", g.seed, "seed for randomized checks")->capture_default_str();
  app.add_option("-o,--output", g.output, "write JSON to this file instead of stdout");

  // construct
  auto* construct = app.add_subcommand("construct", "build a named configuration or X_{d,s}");
  std::string construct_name;
  Count construct_d = 0, construct_s = 0;
  construct->add_option("name", construct_name, "johnson | cross_polytope | simplex | hypercube | e8_roots | pentagon | icosahedron")
      ->required();
  construct->add_option("-d", construct_d, "dimension");
  construct->add_option("-s", construct_s, "number of distances (johnson)");

  // profile
  auto* profile = app.add_subcommand("profile", "distance and inner-product profile of a point file");
  std::string profile_file;
  profile->add_option("pointfile", profile_file)->required();

  // ratios
  auto* ratios = app.add_subcommand("ratios", "ratio families and integrality report");
  std::string ratios_file, ratios_setting = "auto";
  bool ratios_all = false;
  ratios->add_option("pointfile", ratios_file)->required();
  ratios->add_option("--setting", ratios_setting, "auto | euclidean | spherical | antipodal")->capture_default_str();
  ratios->add_flag("--all", ratios_all, "report every applicable setting");

  // certify
  auto* certify_cmd = app.add_subcommand("certify", "indicator-matrix rank and spectrum certificates");
  std::string certify_file, certify_class = "all", certify_setting = "auto";
  certify_cmd->add_option("pointfile", certify_file)->required();
  certify_cmd->add_option("--class", certify_class, "class index i or all")->capture_default_str();
  certify_cmd->add_option("--setting", certify_setting, "auto | euclidean | spherical | antipodal")->capture_default_str();

  // invert
  auto* invert = app.add_subcommand("invert", "recover normalized squared distances from ratios");
  Count invert_s = 0;
  std::vector<double> invert_k;
  invert->add_option("-s", invert_s, "number of distances")->required();
  invert->add_option("-k", invert_k, "k_1,...,k_{s-1}")->required()->delimiter(',')->allow_extra_args(false);

  // enumerate
  auto* enumerate = app.add_subcommand("enumerate", "catalog of admissible integer ratio tuples");
  Count enum_d = 0, enum_s = 0, enum_cap = kDefaultTupleCap;
  bool enum_realize = false;
  enumerate->add_option("-d", enum_d)->required();
  enumerate->add_option("-s", enum_s)->required();
  enumerate->add_flag("--realize", enum_realize, "invert every tuple");
  enumerate->add_option("--cap", enum_cap, "maximum box size")->capture_default_str();

  // embed-check
  auto* embed = app.add_subcommand("embed-check", "realizability of a squared-distance or Gram matrix");
  std::string embed_file;
  Index embed_d = 0;
  embed->add_option("matrixfile", embed_file)->required();
  embed->add_option("-d", embed_d)->required();

  // bounds
  auto* bounds = app.add_subcommand("bounds", "theorem context for a setting");
  std::string bounds_setting;
  Count bounds_d = 0, bounds_s = 0;
  bounds->add_option("--setting", bounds_setting)->required();
  bounds->add_option("-d", bounds_d)->required();
  bounds->add_option("-s", bounds_s)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (construct->parsed()) {
      if (construct_name == "johnson") {
        emit(g, to_json(construct_johnson(construct_d, construct_s)));
      } else {
        emit(g, to_json(construct_named(construct_name, construct_d)));
      }
      return kExitOk;
    }
    if (profile->parsed()) {
      emit(g, profile_json(load_points(profile_file), g.tol));
      return kExitOk;
    }
    if (ratios->parsed()) {
      AnalyzeOptions options;
      options.choice = parse_choice(ratios_setting);
      options.all = ratios_all;
      options.tol = g.tol;
      options.tol_int = g.tol_int;
      const Analysis a = analyze(load_points(ratios_file), options);
      emit(g, to_json(a));
      return a.theorem_violated() ? kExitViolation : kExitOk;
    }
    if (certify_cmd->parsed()) {
      CertifyRequest request;
      request.analyze.choice = parse_choice(certify_setting);
      request.analyze.tol = g.tol;
      request.analyze.tol_int = g.tol_int;
      request.certify.tol_int = g.tol_int;
      request.certify.tol_rank = g.tol_rank;
      if (certify_class != "all") {
        try {
          std::size_t used = 0;
          request.class_index = std::stoll(certify_class, &used);
          if (used != certify_class.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
          throw Error(ErrorKind::parameter, "--class expects an integer or 'all'");
        }
      }
      const auto verdicts = certify(load_points(certify_file), request);
      Json out;
      Json list = Json::array();
      bool violated = false;
      for (const auto& v : verdicts) {
        list.push_back(to_json(v));
        violated = violated || v.theorem_violated();
      }
      out["verdicts"] = std::move(list);
      out["theorem_violated"] = violated;
      emit(g, out);
      return violated ? kExitViolation : kExitOk;
    }
    if (invert->parsed()) {
      if (invert_s < 2 || Count(invert_k.size()) != invert_s - 1)
        throw Error(ErrorKind::parameter, "-k needs exactly s-1 values");
      const Eigen::VectorXd k = Eigen::Map<const Eigen::VectorXd>(invert_k.data(), Index(invert_k.size()));
      Json out;
      out["s"] = invert_s;
      out["k"] = invert_k;
      if (invert_s == 3) {
        try {
          const auto cf = invert_s3_closed(k(0), k(1));
          out["t"] = to_json(Eigen::VectorXd(cf.t));
          out["residual"] = cf.residual;
          out["method"] = "closed_form";
          out["branches"] = {{"t1", std::string(1, cf.branch_t1)}, {"t2", std::string(1, cf.branch_t2)}};
          out["all_plus_branches"] = cf.branch_t1 == '+' && cf.branch_t2 == '+';
          emit(g, out);
          return kExitOk;
        } catch (const Error& e) {
          if (e.kind() == ErrorKind::invalid_sign) throw;
          out["closed_form"] = e.what();
        }
      }
      const auto result = invert_K(k);
      if (!result.converged)
        throw Error(ErrorKind::no_solution, "Newton inversion did not converge (best scaled residual " +
                                                std::to_string(result.residual) + ")");
      out["t"] = to_json(result.t);
      out["residual"] = result.residual;
      out["method"] = "newton";
      out["branches"] = nullptr;
      out["iterations"] = result.iterations;
      out["start_index"] = result.start_index;
      emit(g, out);
      return kExitOk;
    }
    if (enumerate->parsed()) {
      CandidateCatalog catalog = enumerate_tuples(enum_d, enum_s, enum_cap);
      if (enum_realize) catalog = realize_catalog(std::move(catalog));
      emit(g, to_json(catalog));
      return kExitOk;
    }
    if (embed->parsed()) {
      const MatrixFile file = parse_matrix_file(read_file(embed_file));
      const EmbeddingVerdict v = file.gram ? spherical_embeddable(file.matrix, embed_d)
                                           : euclidean_embeddable(file.matrix, embed_d);
      Json out = to_json(v);
      out["kind"] = file.gram ? "gram" : "squared_distance";
      emit(g, out);
      return kExitOk;
    }
    if (bounds->parsed()) {
      const auto setting = setting_from_string(bounds_setting);
      if (!setting) throw Error(ErrorKind::parameter, "unknown setting '" + bounds_setting + "'");
      emit(g, to_json(theorem_context(*setting, bounds_d, bounds_s)));
      return kExitOk;
    }
  } catch (const Error& e) {
    std::cerr << "sdist: " << e.what() << "\n";
    return e.is_input_error() ? kExitUsage : kExitNumerical;
  } catch (const std::exception& e) {
    std::cerr << "sdist: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
