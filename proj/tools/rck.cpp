#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rck/kernel.hpp"
#include "rck/random_frames.hpp"
#include "rck/relaxed_ck.hpp"
#include "rck/scenario.hpp"

namespace fs = std::filesystem;
using rck::scenario::Json;

namespace {

bool write_file(const fs::path& path, const std::string& text) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << text;
  return static_cast<bool>(out);
}

// Directories stand for their *.json files in name order.
std::vector<std::string> expand(const std::vector<std::string>& args) {
  std::vector<std::string> files;
  for (const auto& a : args) {
    if (!fs::is_directory(a)) {
      files.push_back(a);
      continue;
    }
    std::vector<std::string> found;
    for (const auto& entry : fs::directory_iterator(a))
      if (entry.is_regular_file() && entry.path().extension() == ".json") found.push_back(entry.path().string());
    std::sort(found.begin(), found.end());
    files.insert(files.end(), found.begin(), found.end());
  }
  return files;
}

int check(const std::vector<std::string>& args, const rck::scenario::Options& opt, const std::string& out) {
  const std::vector<std::string> files = expand(args);
  int worst = 0;
  for (const auto& file : files) {
    std::ifstream in(file, std::ios::binary);
    rck::scenario::RunOutcome res;
    if (!in) {
      res.exit_code = rck::scenario::kSchema;
      res.report["error"] = "cannot read " + file;
      res.summary = file + ": cannot read\n";
    } else {
      std::stringstream ss;
      ss << in.rdbuf();
      res = rck::scenario::run_text(ss.str(), opt);
    }
    std::cout << res.summary;
    if (!out.empty()) {
      fs::path target = out;
      if (files.size() > 1 || fs::is_directory(target)) target /= fs::path(file).stem().string() + ".report.json";
      if (!write_file(target, res.report.dump(2) + "\n")) {
        std::cerr << "cannot write " << target << "\n";
        worst = std::max(worst, 3);
      }
    }
    worst = std::max(worst, res.exit_code);
  }
  return worst;
}

Json random_scenario(rck::random::Rng& rng, std::size_t index, std::uint64_t seed) {
  using namespace rck;
  const FramePtr f = random::random_frame(rng);
  Json s;
  s["name"] = "random_" + std::to_string(seed) + "_" + std::to_string(index);
  s["kind"] = "frame";
  s["frame"] = scenario::to_json(*f);
  Json events = Json::object();
  std::vector<Event> ev;
  for (int k = 1; k <= 3; ++k) {
    ev.push_back(random::random_event(rng, f));
    events["e" + std::to_string(k)] = {{"points", scenario::event_to_json(ev.back())}};
  }
  s["events"] = events;
  const Profile p = random::random_profile(rng, f, rng() % 2 == 0);
  Json prof = Json::object();
  for (std::size_t k = 0; k < p.size(); ++k)
    prof[f->player_name(p.players()[k])] = {{"points", scenario::event_to_json(p.anchor_at(k))}};
  s["profiles"] = {{"p", prof}};
  Json queries = Json::array();
  for (int k = 0; k < 3; ++k) {
    const Event c = ck_at(p, ev[k], CkAlgorithm::kleene);
    queries.push_back({{"op", "ck_at"},
                       {"profile", "p"},
                       {"event", "e" + std::to_string(k + 1)},
                       {"expect", {{"points", scenario::event_to_json(c)}}}});
  }
  const std::vector<PlayerId> all = f->players();
  queries.push_back({{"op", "ck_traditional"},
                     {"players", "all"},
                     {"event", "e1"},
                     {"expect", {{"points", scenario::event_to_json(ck_traditional(all, ev[0]))}}}});
  queries.push_back({{"op", "check_induction_rule"}, {"profile", "p"}, {"event", "e2"}});
  s["queries"] = std::move(queries);
  return s;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checker for relaxed common knowledge on finite history-time frames"};
  app.require_subcommand(1);

  rck::scenario::Options opt;
  std::string out;
  std::vector<std::string> files;
  auto* chk = app.add_subcommand("check", "Run scenario files and compare against their expectations");
  chk->add_option("scenarios", files, "Scenario JSON files or directories of them")->required()->check(CLI::ExistingPath);
  chk->add_option("--algorithm", opt.algorithm, "kleene, reachability or both (both cross-checks)")
      ->check(CLI::IsMember({"kleene", "reachability", "both"}));
  chk->add_option("--verbosity", opt.verbosity, "0 quiet, 1 normal, 2 with traces");
  chk->add_option("--seed", opt.seed, "Recorded in the report");
  chk->add_option("--cap", opt.cap, "Enumeration cap for brute-force queries");
  chk->add_option("--out", out, "Report file, or directory when several scenarios are given");

  std::uint64_t gen_seed = 1;
  std::size_t count = 1;
  std::string gen_out;
  auto* gen = app.add_subcommand("generate", "Emit random frame scenarios for property testing");
  gen->add_option("--seed", gen_seed, "Random seed");
  gen->add_option("--count", count, "Number of scenarios");
  gen->add_option("--out", gen_out, "Output directory (stdout when omitted)");

  std::string ex_out = "scenarios";
  auto* ex = app.add_subcommand("examples", "Write the shipped fixture scenarios");
  ex->add_option("--out", ex_out, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*chk) return check(files, opt, out);
    if (*gen) {
      rck::random::Rng rng(gen_seed);
      for (std::size_t k = 0; k < count; ++k) {
        const Json s = random_scenario(rng, k, gen_seed);
        if (gen_out.empty()) std::cout << s.dump(2) << "\n";
        else if (!write_file(fs::path(gen_out) / (s["name"].get<std::string>() + ".json"), s.dump(2) + "\n")) return 3;
      }
      return 0;
    }
    if (*ex) {
      for (const auto& [name, s] : rck::scenario::shipped_examples()) {
        const fs::path p = fs::path(ex_out) / (name + ".json");
        if (!write_file(p, s.dump(2) + "\n")) {
          std::cerr << "cannot write " << p << "\n";
          return 3;
        }
        std::cout << p.string() << "\n";
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
  return 0;
}
