// bfred: batch front end for classification, Drazin data, spectra and the
// theorem suite. Exit codes: 0 success, 1 verification failure, 2 usage or
// parse error.
#include <iostream>

#include "CLI11.hpp"
#include "bfred/cli/report.hpp"
#include "bfred/harness/harness.hpp"
#include "bfred/spectral/language.hpp"

namespace {

using bfred::cli::Workspace;
using ojson = nlohmann::ordered_json;

void emit(const ojson& report, const std::string& format) {
  if (format == "json")
    std::cout << report.dump(2) << "\n";
  else
    std::cout << bfred::cli::render_text(report);
}

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(list);
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact B-Fredholm workbench"};
  app.require_subcommand(1);
  app.fallthrough();
  std::string format = "text";
  app.add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));

  std::string ws_path, hom_name, element_name;
  std::vector<std::string> names;
  unsigned trials = 8;
  std::uint64_t seed = 0;

  auto* classify = app.add_subcommand("classify", "Classify an element relative to a homomorphism");
  classify->add_option("workspace", ws_path)->required();
  classify->add_option("hom", hom_name)->required();
  classify->add_option("element", element_name)->required();
  classify->add_option("--trials", trials, "B-Weyl/B-Browder search budget");
  classify->add_option("--seed", seed);

  auto* drazin = app.add_subcommand("drazin", "Drazin inverse, index and spectral idempotent");
  drazin->add_option("workspace", ws_path)->required();
  drazin->add_option("element", element_name)->required();

  auto* spectra = app.add_subcommand("spectra", "Spectra of elements relative to a homomorphism");
  spectra->add_option("workspace", ws_path)->required();
  spectra->add_option("hom", hom_name)->required();
  spectra->add_option("elements", names)->required();
  spectra->add_option("--seed", seed);

  std::string expr;
  auto* diag = app.add_subcommand("diag", "Spectra of a diagonal-model element");
  diag->add_option("expr", expr, "mini-language text, or a name with --workspace")->required();
  diag->add_option("--workspace", ws_path);

  bfred::harness::TrialPlan plan;
  plan.seed = 42;
  plan.trials = 100;
  std::string family = "u2", filter, replay_tag;
  unsigned replay_trial = 0;
  auto* verify = app.add_subcommand("verify", "Run the randomized theorem suite");
  verify->add_option("--seed", plan.seed);
  verify->add_option("--trials", plan.trials);
  verify->add_option("--family", family, "u2, u3, ..., block, random, diagonal");
  verify->add_option("--filter", filter, "comma separated tags");
  verify->add_option("--max-dim", plan.max_ambient_dim);
  auto* replay_opt = verify->add_option("--replay", replay_tag, "rerun one tag on one trial");
  verify->add_option("--trial", replay_trial)->needs(replay_opt);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*classify) {
      const Workspace ws = bfred::cli::load_workspace(ws_path);
      emit(bfred::cli::classify_report(ws.homomorphism(hom_name), ws.element(element_name), trials, seed), format);
    } else if (*drazin) {
      const Workspace ws = bfred::cli::load_workspace(ws_path);
      emit(bfred::cli::drazin_report(ws.element(element_name)), format);
    } else if (*spectra) {
      const Workspace ws = bfred::cli::load_workspace(ws_path);
      const auto& hom = ws.homomorphism(hom_name);
      ojson out;
      for (const auto& n : names) out[n] = bfred::cli::spectra_report(hom, ws.element(n), seed);
      emit(out, format);
    } else if (*diag) {
      if (ws_path.empty()) {
        emit(bfred::cli::diag_report(bfred::spectral::parse_diagonal(expr)), format);
      } else {
        const Workspace ws = bfred::cli::load_workspace(ws_path);
        emit(bfred::cli::diag_report(ws.diagonal(expr)), format);
      }
    } else if (*verify) {
      plan.algebra_family = bfred::harness::parse_family(family);
      plan.theorem_filter = split(filter);
      for (const auto& t : plan.theorem_filter) {
        const auto& tags = bfred::harness::theorem_tags();
        if (std::find(tags.begin(), tags.end(), t) == tags.end())
          throw bfred::ShapeError("unknown tag '" + t + "'");
      }
      if (!replay_tag.empty()) {
        const auto f = bfred::harness::replay(plan, replay_tag, replay_trial);
        if (!f) {
          std::cout << "replay " << replay_tag << " trial=" << replay_trial << ": passes\n";
          return 0;
        }
        std::cout << "replay " << replay_tag << " trial=" << replay_trial << ": FAILURE " << f->message << "\n"
                  << f->dump;
        return 1;
      }
      const auto results = bfred::harness::run_suite(plan);
      std::cout << (format == "json" ? bfred::harness::format_json(plan, results) + "\n"
                                     : bfred::harness::format_text(plan, results));
      return bfred::harness::has_failures(results) ? 1 : 0;
    }
  } catch (const bfred::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const bfred::cli::ResolutionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bfred::ShapeError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const bfred::Error& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
