#include "rck/fixtures.hpp"
#include "rck/scenario.hpp"

namespace rck::scenario {

namespace {

Json op(const std::string& name, Json args) {
  Json j = {{"op", name}};
  for (auto& [k, v] : args.items()) j[k] = v;
  return j;
}

Json points(std::initializer_list<std::pair<std::string, std::vector<int>>> rows) {
  Json p = Json::object();
  for (const auto& [h, ts] : rows) p[h] = ts;
  Json j = Json::object();
  j["points"] = std::move(p);
  return j;
}

Json expr(const std::string& name, std::initializer_list<Json> args) {
  Json j = Json::object();
  j["op"] = name;
  j["args"] = Json::array();
  for (const auto& a : args) j["args"].push_back(a);
  return j;
}

Json query(const std::string& label, const std::string& name, Json args, Json expect) {
  Json j = op(name, std::move(args));
  j["label"] = label;
  j["expect"] = std::move(expect);
  return j;
}

Json hm_paradox() {
  const BdtfSpec spec = fixtures::hm_spec();
  const BdtfFrame bf = build_bdtf_frame(spec);
  const std::string w1 = bf.frame->history_name(HistoryId{0}), w2 = bf.frame->history_name(HistoryId{1});
  Json s;
  s["name"] = "hm_paradox";
  s["kind"] = "bdtf";
  s["bdtf"] = to_json(spec);
  s["events"] = {
      {"send", {{"subjective_time", {{"player", "alpha"}, {"s", 0}}}}},
      {"recv", {{"subjective_time", {{"player", "beta"}, {"s", 0}}}}},
      {"sent", expr("diamond", {"send"})},
      {"sent_after_zero", expr("intersect", {"sent", {{"from_time", 1}}})},
  };
  s["profiles"] = {{"hm", {{"alpha", "send"}, {"beta", "recv"}}}};
  s["queries"] = {
      query("send implies recv misses only the send points", "event",
            {{"event", expr("implies", {"send", "recv"})}},
            expr("complement", {points({{w1, {0}}, {w2, {0}}})})),
      query("alpha's time-1 ken is the time-1 pair", "knows",
            {{"player", "alpha"}, {"event", points({{w1, {1}}, {w2, {1}}})}},
            points({{w1, {1}}, {w2, {1}}})),
      query("a lone beta point is not beta-local", "is_local", {{"player", "beta"}, {"event", points({{w1, {1}}})}},
            false),
      query("receipt happens in both histories", "histories_of", {{"event", "recv"}}, Json::array({w1, w2})),
      query("receipt is singular", "is_singular", {{"event", "recv"}}, true),
      query("traditional CK of the sent message is empty after time 0", "ck_traditional",
            {{"players", "all"}, {"event", "sent_after_zero"}}, "empty"),
      query("beta knows at receipt that the message was sent", "knows_at",
            {{"player", "beta"}, {"anchor", "recv"}, {"event", "sent"}}, "all"),
      query("relaxed CK of the sent message holds everywhere", "ck_at", {{"profile", "hm"}, {"event", "sent"}}, "all"),
      query("beta's individualized event is the receipt", "individualized",
            {{"player", "beta"}, {"profile", "hm"}, {"event", "sent"}}, "recv"),
      query("induction rule applies", "check_induction_rule", {{"profile", "hm"}, {"event", "sent"}},
            {{"premise", true}, {"conclusion", true}}),
      query("one component", "components", {{"profile", "hm"}}, Json::array({Json::array({w1, w2})})),
      query("no new traditional CK in the first history", "verify_no_new_ck",
            {{"history", w1}, {"event", "sent_after_zero"}}, {{"hypothesis", true}, {"first_violation", nullptr}}),
      query("beta at subjective time 1 cannot tell the histories apart", "slice_partition",
            {{"player", "beta"}, {"anchor", {{"subjective_time", {{"player", "beta"}, {"s", 1}}}}}},
            Json::array({Json::array({w1, w2})})),
  };
  return s;
}

Json lost_message() {
  Json s;
  s["name"] = "lost_message";
  s["kind"] = "frame";
  s["frame"] = to_json(*fixtures::lost_message_frame());
  s["events"] = {
      {"send", points({{"w1", {0}}, {"w2", {0}}, {"w3", {0}}})},
      {"recv", points({{"w1", {1}}, {"w2", {2}}})},
      {"sent", expr("diamond", {"send"})},
  };
  s["profiles"] = {{"hm", {{"alpha", "send"}, {"beta", "recv"}}}};
  s["queries"] = {
      query("send and receipt do not co-occur", "co_occurs", {{"profile", "hm"}}, false),
      query("relaxed CK collapses on the shared component", "ck_at", {{"profile", "hm"}, {"event", "sent"}}, "empty"),
      query("alpha's individualized event is empty", "individualized",
            {{"player", "alpha"}, {"profile", "hm"}, {"event", "sent"}}, "empty"),
      query("co-occurrence theorem: both sides false", "check_cooccurrence_theorem",
            {{"profile", "hm"}, {"event", "sent"}, {"player", "alpha"}},
            {{"anchors_in_ck", false}, {"cooccurs_everywhere", false}}),
      query("the lost message is the co-occurrence failure", "diagnose",
            {{"profile", "hm"}, {"event", "sent"}, {"history", "w3"}}, {{"failure", "cooccurrence"}}),
  };
  return s;
}

Json coin() {
  Json s = to_json(fixtures::coin_frame());
  s["name"] = "coin";
  s["kind"] = "agreement";
  s["events"] = {
      {"heads", {{"histories", Json::array({"heads"})}}},
      {"alpha_t1", {{"times", Json::array({1})}}},
      {"beta_t1", {{"times", Json::array({1})}}},
  };
  s["profiles"] = {{"t1", {{"alpha", "alpha_t1"}, {"beta", "beta_t1"}}}};
  s["queries"] = {
      query("alpha before the toss", "posterior", {{"player", "alpha"}, {"event", "heads"}, {"at", {"heads", 0}}},
            "1/2"),
      query("alpha after the toss", "posterior", {{"player", "alpha"}, {"event", "heads"}, {"at", {"heads", 1}}}, "1"),
      query("alpha is sure of heads exactly after seeing it", "posterior_event",
            {{"player", "alpha"}, {"event", "heads"}, {"q", "1"}}, points({{"heads", {1, 2}}})),
      query("disagreeing posteriors are never relaxed CK", "verify_agreement",
            {{"profile", "t1"}, {"event", "heads"}, {"q_alpha", "1"}, {"q_beta", "1/2"}},
            {{"ck_nonempty", false}, {"equal", false}}),
  };
  return s;
}

Json example1() {
  Json s;
  s["name"] = "example1";
  s["kind"] = "attack_game";
  s["game"] = {{"generator", "example1"}};
  s["events"] = {{"prospect", {{"prospect", 1}}},
                 {"prospect_after_zero", expr("intersect", {"prospect", {{"from_time", 1}}})}};
  s["queries"] = {
      query("attack exactly in the prospect-1 states", "compute_sck", Json::object(),
            {{"outcomes",
              {{"q0z0", {{"alpha", nullptr}, {"beta", nullptr}}},
               {"q0z1", {{"alpha", nullptr}, {"beta", nullptr}}},
               {"q1z0", {{"success", true}}},
               {"q1z1", {{"success", true}}}}},
             {"welfare", "1/2"},
             {"never_unsuccessful", true}}),
      query("traditional CK of the prospect never arises after time 0", "ck_traditional",
            {{"players", "all"}, {"event", "prospect_after_zero"}}, "empty"),
      query("always attacking is unsuccessful somewhere", "verify_never_unsuccessful",
            {{"strategy", {{"alpha", "all"}, {"beta", "all"}}}}, false),
  };
  return s;
}

Json example2() {
  Json s;
  s["name"] = "example2";
  s["kind"] = "attack_game";
  s["game"] = {{"generator", "example2"}};
  // beta succeeds iff the first message arrives by its subjective time 46: d - z <= 46
  Json outcomes = Json::object();
  for (std::size_t z = 0; z <= 1; ++z)
    for (std::size_t d : {std::size_t{1}, 46 + z, 47 + z, std::size_t{100}}) {
      const std::string name = "q1z" + std::to_string(z) + "d" + std::to_string(d);
      outcomes[name] = {{"success", d <= 46 + z}};
    }
  s["queries"] = {
      query("the subjective-time-46 boundary", "compute_sck", Json::object(),
            {{"outcomes", outcomes}, {"welfare", "93/400"}, {"never_unsuccessful", true}}),
  };
  return s;
}

Json example3() {
  Json s;
  s["name"] = "example3";
  s["kind"] = "attack_game";
  s["game"] = {{"generator", "example3"}};
  s["queries"] = {
      query("attack only when beta is alive and the prospect is 1", "compute_sck", Json::object(),
            {{"outcomes",
              {{"q0z0", {{"alpha", nullptr}, {"beta", nullptr}}},
               {"q0z100", {{"alpha", nullptr}, {"beta", nullptr}}},
               {"q1z0", {{"alpha", 1}, {"beta", 1}, {"success", true}}},
               {"q1z100", {{"alpha", nullptr}, {"beta", nullptr}}}}},
             {"welfare", "1/4"},
             {"never_unsuccessful", true}}),
  };
  return s;
}

Json tiny(std::size_t t_hat_alpha) {
  Json s;
  s["name"] = t_hat_alpha == 2 ? "tiny" : "tiny_late";
  s["kind"] = "attack_game";
  s["game"] = {{"generator", "tiny"}, {"t_hat_alpha", t_hat_alpha}};
  const bool attack = t_hat_alpha >= 1;
  s["queries"] = {
      query("exhaustive check of the CK strategy", "brute_force_frontier", Json::object(),
            {{"all_hold", true}, {"ck_nonempty", attack}, {"positive_welfare_equilibrium", attack}}),
      query("welfare", "expected_welfare", {{"strategy", "sck"}}, {{"expected", attack ? "1/4" : "0"}}),
  };
  return s;
}

Json gp82() {
  Json s;
  s["name"] = "gp82";
  s["kind"] = "gp82";
  s["bdtf"] = to_json(fixtures::gp82_spec());
  s["queries"] = {query("posteriors agree and are relaxed CK", "gp82_dialogue", Json::object(), {{"verdict", true}})};
  return s;
}

Json get_ck() {
  const BdtfSpec spec = fixtures::hm_timestamped_spec();
  const BdtfFrame bf = build_bdtf_frame(spec);
  Json s;
  s["name"] = "get_ck";
  s["kind"] = "bdtf";
  s["bdtf"] = to_json(spec);
  s["queries"] = Json::array();
  for (std::size_t h = 0; h < bf.histories.size(); ++h) {
    const std::string name = bf.frame->history_name(HistoryId{h});
    s["queries"].push_back(query("round trip in " + name, "roundtrip_ck_facts", {{"history", name}},
                                 {{"a_role", "beta"}, {"t1", 3}, {"t2", 3}, {"t3", 6}, {"Z", 3}, {"verified", true}}));
    s["queries"].push_back(query("stabilization in " + name, "getck_times", {{"history", name}}, {{"verified", true}}));
  }
  return s;
}

Json control() {
  const BdtfSpec spec = fixtures::refinement_spec(2, 6, false);
  const BdtfFrame bf = build_bdtf_frame(spec);
  Json s;
  s["name"] = "control";
  s["kind"] = "bdtf";
  s["bdtf"] = to_json(spec);
  s["events"] = {{"x_known", expr("intersect", {{{"initial_condition", Json::array({"x"})}}, {{"from_time", 2}}})}};
  const std::string w = bf.frame->history_name(HistoryId{0});
  s["queries"] = {
      query("round trip of 2 is outside the theorem", "verify_no_new_ck", {{"history", w}, {"event", "x_known"}},
            {{"hypothesis", false}}),
      query("and the content does become common knowledge", "ck_traditional", {{"players", "all"}, {"event", "x_known"}},
            "x_known"),
  };
  return s;
}

}  // namespace

std::map<std::string, Json> shipped_examples() {
  return {{"hm_paradox", hm_paradox()}, {"lost_message", lost_message()}, {"coin", coin()},
          {"example1", example1()},     {"example2", example2()},         {"example3", example3()},
          {"tiny", tiny(2)},            {"tiny_late", tiny(0)},           {"gp82", gp82()},
          {"get_ck", get_ck()},         {"control", control()}};
}

}  // namespace rck::scenario
