#include <doctest.h>

#include "rck/fixtures.hpp"
#include "rck/random_frames.hpp"
#include "rck/scenario.hpp"

using namespace rck;
using namespace rck::scenario;

TEST_CASE("values survive a serialization round trip") {
  random::Rng rng(2);
  for (int n = 0; n < 50; ++n) {
    const FramePtr f = random::random_frame(rng);
    CHECK(*frame_from_json(Json::parse(to_json(*f).dump())) == *f);
    const ProbFrame pf = random::random_prob_frame(rng, f);
    CHECK(prob_frame_from_json(Json::parse(to_json(pf).dump())) == pf);
    const BdtfSpec b = random::random_timestamped_spec(rng);
    CHECK(bdtf_spec_from_json(Json::parse(to_json(b).dump())) == b);
    const AttackGameSpec g = random::random_tiny_game(rng);
    CHECK(game_spec_from_json(Json::parse(to_json(g).dump())) == g);
  }
  for (const AttackGameSpec& g : {fixtures::example1_spec(), fixtures::example2_spec(), fixtures::example3_spec()})
    CHECK(game_spec_from_json(to_json(g)) == g);
  CHECK(bdtf_spec_from_json(to_json(fixtures::gp82_spec())) == fixtures::gp82_spec());
  CHECK(game_spec_from_json(Json{{"generator", "example1"}}) == fixtures::example1_spec());
}

TEST_CASE("exit codes") {
  const Options opt;
  const std::string frame = to_json(*fixtures::lost_message_frame()).dump();

  const RunOutcome ok = run_text(R"({"name":"e","kind":"frame","frame":)" + frame + R"(,"queries":[]})", opt);
  CHECK(ok.exit_code == kOk);
  CHECK(ok.report["queries"].empty());

  CHECK(run_text("{not json", opt).exit_code == kSchema);
  CHECK(run_text(R"({"kind":"nonsense","queries":[]})", opt).exit_code == kSchema);
  CHECK(run_text(R"({"name":"e","kind":"frame","frame":)" + frame + R"(,"queries":[{"op":"warp"}]})", opt).exit_code ==
        kSchema);

  const std::string mismatch = R"({"name":"e","kind":"frame","frame":)" + frame +
                               R"(,"queries":[{"op":"is_singular","event":"all","expect":true}]})";
  CHECK(run_text(mismatch, opt).exit_code == kMismatch);

  const std::string failing = R"({"name":"e","kind":"frame","frame":)" + frame +
                              R"(,"queries":[{"op":"posterior","player":"alpha","event":"all","at":["w1",0]}]})";
  CHECK(run_text(failing, opt).exit_code != kOk);

  const std::string nonlocal = R"({"name":"e","kind":"frame","frame":)" + frame +
                               R"(,"profiles":{"p":{"beta":{"points":{"w1":[1]}}}},"queries":[]})";
  CHECK(run_text(nonlocal, opt).exit_code == kSchema);

  Options tight;
  tight.cap = 1;
  CHECK(run(shipped_examples().at("tiny"), tight).exit_code == kExecution);
}

TEST_CASE("shipped scenarios pass under every algorithm and are deterministic") {
  for (const auto& [name, json] : shipped_examples()) {
    for (const char* alg : {"kleene", "reachability", "both"}) {
      Options opt;
      opt.algorithm = alg;
      const RunOutcome a = run(json, opt);
      INFO(name << " " << alg << "\n" << a.summary);
      CHECK(a.exit_code == kOk);
      if (std::string(alg) == "both") CHECK(run(json, opt).report.dump() == a.report.dump());
    }
  }
}
