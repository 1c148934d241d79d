// ordperm command-line front end.
#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "ordperm/ordperm.hpp"

namespace fs = std::filesystem;
using namespace ordperm;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& p, const std::string& content) {
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << content;
  if (!content.empty() && content.back() != '\n') out << '\n';
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::optional<std::string> out;

  void apply(Scenario& s) const {
    if (seed) s.seed = *seed;
    if (trials) s.trials = *trials;
    if (out) s.output = *out;
  }
};

int execute(const Scenario& s) {
  Report r = run(s);
  fs::path dir(s.output);
  for (const auto& f : r.files) write_file(dir / f.path, f.content);
  write_file(dir / "report.txt", r.text());
  std::cout << r.body();
  std::cerr << r.timing();
  return r.pass() ? 0 : 1;
}

// Default model and trial count per suite for "demo".
Scenario demo_scenario(const std::string& suite) {
  static const std::map<std::string, std::string> models{
      {"lemma31", "PL2T"},           {"lemma41", "PL2T,PL2T,PL2T"}, {"lemma42", "PL2T,PL2T,PL2T"},
      {"centralizer", "PL2T,PL2T"}, {"oprim", "PL2T,PL2T"},         {"algebra", "PL2T,PL2T"},
  };
  auto it = models.find(suite);
  if (it == models.end()) fail(ErrorCode::UnknownSuite, suite);
  return parse_scenario("model=" + it->second + "; suite=" + suite + "; trials=10; output=demo-" + suite);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ordperm: lexicographic tower automorphisms, witnesses and certificates"};
  app.require_subcommand(1);
  Overrides ov;
  auto add_overrides = [&](CLI::App* sub) {
    sub->add_option("--seed", ov.seed, "override the scenario seed");
    sub->add_option("--trials", ov.trials, "override the trial count")->check(CLI::PositiveNumber);
    sub->add_option("--out", ov.out, "output directory");
  };

  std::string path, suite;
  auto* run_cmd = app.add_subcommand("run", "run a scenario file");
  run_cmd->add_option("scenario", path, "scenario file")->required();
  add_overrides(run_cmd);

  auto* verify_cmd = app.add_subcommand("verify", "check every certificate in a file");
  verify_cmd->add_option("cert-file", path)->required();

  auto* rt_cmd = app.add_subcommand("roundtrip", "parse, print and reparse a file of serialized objects");
  rt_cmd->add_option("file", path)->required();

  auto* demo_cmd = app.add_subcommand("demo", "run one suite on a built-in scenario");
  demo_cmd->add_option("suite", suite)->required();
  add_overrides(demo_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run_cmd) {
      Scenario s = parse_scenario(slurp(path));
      ov.apply(s);
      return execute(s);
    }
    if (*demo_cmd) {
      Scenario s = demo_scenario(suite);
      ov.apply(s);
      return execute(s);
    }
    if (*verify_cmd) {
      auto certs = parse_cert_file(slurp(path));
      std::size_t bad = 0;
      for (std::size_t i = 0; i < certs.size(); ++i) {
        bool ok = check_cert(certs[i]);
        bad += !ok;
        std::cout << "CERT " << i + 1 << " " << certs[i].kind << " " << (ok ? "valid" : "INVALID") << "\n";
      }
      std::cout << (bad == 0 && !certs.empty() ? "verified " : "failed ") << certs.size() - bad << "/"
                << certs.size() << "\n";
      return bad == 0 && !certs.empty() ? 0 : 1;
    }
    if (*rt_cmd) {
      RoundtripResult r = roundtrip_text(slurp(path));
      for (const auto& m : r.mismatches) std::cout << "MISMATCH " << m << "\n";
      std::cout << (r.ok() ? "roundtrip ok " : "roundtrip failed ") << r.objects << " objects\n";
      return r.ok() ? 0 : 1;
    }
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
