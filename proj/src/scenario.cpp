#include "rck/scenario.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

#include "rck/errors.hpp"
#include "rck/fixtures.hpp"
#include "rck/kernel.hpp"
#include "rck/relaxed_ck.hpp"

namespace rck::scenario {

namespace {

[[noreturn]] void schema(const std::string& msg) { throw SchemaError(msg); }

const Json& need(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) schema(where + ": missing '" + key + "'");
  return j.at(key);
}

std::size_t as_size(const Json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0) schema(where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

std::int64_t as_int(const Json& j, const std::string& where) {
  if (!j.is_number_integer()) schema(where + ": expected an integer");
  return j.get<std::int64_t>();
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) schema(where + ": expected a string");
  return j.get<std::string>();
}

bool as_bool(const Json& j, const std::string& where) {
  if (!j.is_boolean()) schema(where + ": expected true or false");
  return j.get<bool>();
}

Rational as_rational(const Json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (!j.is_string()) schema(where + ": expected a fraction string such as \"1/3\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const PreconditionError& e) {
    schema(where + ": " + e.what());
  }
}

std::vector<std::string> as_strings(const Json& j, const std::string& where) {
  if (!j.is_array()) schema(where + ": expected a list of strings");
  std::vector<std::string> out;
  for (const auto& x : j) out.push_back(as_string(x, where));
  return out;
}

const char* player_key(int i) { return i == 0 ? "alpha" : "beta"; }

}  // namespace

// ---------- model serialization ----------

Json to_json(const Frame& f) {
  Json j;
  j["histories"] = f.history_names();
  j["horizon"] = f.horizon();
  j["players"] = f.player_names();
  Json kens = Json::object();
  for (PlayerId i : f.players()) {
    Json rows = Json::array();
    for (std::size_t h = 0; h < f.history_count(); ++h) {
      Json row = Json::array();
      for (std::size_t t = 0; t < f.horizon(); ++t) row.push_back(f.ken_of(i, Point{HistoryId{h}, t}));
      rows.push_back(std::move(row));
    }
    kens[f.player_name(i)] = std::move(rows);
  }
  j["kens"] = std::move(kens);
  return j;
}

FramePtr frame_from_json(const Json& j) {
  const std::string w = "frame";
  auto histories = as_strings(need(j, "histories", w), w + ".histories");
  const std::size_t H = as_size(need(j, "horizon", w), w + ".horizon");
  auto players = as_strings(need(j, "players", w), w + ".players");
  const Json& kens = need(j, "kens", w);
  std::vector<std::vector<std::int64_t>> labels;
  for (const auto& p : players) {
    const std::string where = w + ".kens." + p;
    const Json& rows = need(kens, p.c_str(), w + ".kens");
    if (!rows.is_array() || rows.size() != histories.size()) schema(where + ": expected one row per history");
    std::vector<std::int64_t> flat;
    for (const auto& row : rows) {
      if (!row.is_array() || row.size() != H) schema(where + ": expected one ken label per time");
      for (const auto& x : row) flat.push_back(as_int(x, where));
    }
    labels.push_back(std::move(flat));
  }
  try {
    return make_frame(std::move(histories), H, std::move(players), labels);
  } catch (const PreconditionError& e) {
    schema(w + ": " + e.what());
  }
}

Json to_json(const ProbFrame& pf) {
  Json j;
  j["frame"] = to_json(pf.frame());
  Json ws = Json::array();
  for (const auto& w : pf.weights()) ws.push_back(to_string(w));
  j["weights"] = std::move(ws);
  return j;
}

ProbFrame prob_frame_from_json(const Json& j) {
  FramePtr f = frame_from_json(need(j, "frame", "agreement"));
  const Json& ws = need(j, "weights", "agreement");
  if (!ws.is_array()) schema("weights: expected a list");
  std::vector<Rational> weights;
  for (const auto& x : ws) weights.push_back(as_rational(x, "weights"));
  try {
    return ProbFrame(f, std::move(weights));
  } catch (const PreconditionError& e) {
    schema(std::string("weights: ") + e.what());
  }
}

Json to_json(const BdtfSpec& s) {
  Json j;
  j["initial_conditions"] = s.initial_conditions;
  j["initial_partition"] = {{"alpha", s.initial_partition[0]}, {"beta", s.initial_partition[1]}};
  j["z_max"] = s.z_max;
  j["d_max"] = s.d_max;
  j["single_dimensional"] = s.single_dimensional ? Json(*s.single_dimensional) : Json(nullptr);
  j["horizon"] = s.horizon;
  j["signals"] = {{"alpha", to_string(s.signals[0])}, {"beta", to_string(s.signals[1])}};
  j["timestamps"] = s.timestamps;
  j["margin"] = s.margin;
  j["history_cap"] = s.history_cap;
  j["posterior_target"] = s.posterior_target;
  Json prior = Json::array();
  for (const auto& w : s.prior) prior.push_back(to_string(w));
  j["prior"] = std::move(prior);
  return j;
}

BdtfSpec bdtf_spec_from_json(const Json& j) {
  const std::string w = "bdtf";
  if (!j.is_object()) schema(w + ": expected an object");
  BdtfSpec s;
  s.initial_conditions = as_strings(need(j, "initial_conditions", w), w + ".initial_conditions");
  const Json& part = need(j, "initial_partition", w);
  for (int i = 0; i < 2; ++i) {
    const Json& row = need(part, player_key(i), w + ".initial_partition");
    if (!row.is_array()) schema(w + ".initial_partition: expected lists");
    s.initial_partition[i].clear();
    for (const auto& x : row) s.initial_partition[i].push_back(as_int(x, w + ".initial_partition"));
  }
  if (j.contains("z_max")) s.z_max = as_size(j["z_max"], w + ".z_max");
  if (j.contains("d_max")) s.d_max = as_size(j["d_max"], w + ".d_max");
  if (j.contains("single_dimensional") && !j["single_dimensional"].is_null())
    s.single_dimensional = as_size(j["single_dimensional"], w + ".single_dimensional");
  s.horizon = as_size(need(j, "horizon", w), w + ".horizon");
  if (j.contains("signals")) {
    for (int i = 0; i < 2; ++i) {
      if (!j["signals"].contains(player_key(i))) continue;
      try {
        s.signals[i] = parse_signal_rule(as_string(j["signals"][player_key(i)], w + ".signals"));
      } catch (const PreconditionError& e) {
        schema(w + ".signals: " + e.what());
      }
    }
  }
  if (j.contains("timestamps")) s.timestamps = as_bool(j["timestamps"], w + ".timestamps");
  if (j.contains("margin")) s.margin = as_size(j["margin"], w + ".margin");
  if (j.contains("history_cap")) s.history_cap = as_size(j["history_cap"], w + ".history_cap");
  if (j.contains("posterior_target")) s.posterior_target = as_strings(j["posterior_target"], w + ".posterior_target");
  if (j.contains("prior")) {
    if (!j["prior"].is_array()) schema(w + ".prior: expected a list");
    for (const auto& x : j["prior"]) s.prior.push_back(as_rational(x, w + ".prior"));
  }
  return s;
}

namespace {

Json delays_to_json(const std::vector<std::size_t>& d) {
  if (d.empty()) return Json::array();
  std::map<std::size_t, std::size_t> freq;
  for (auto x : d) ++freq[x];
  auto common = std::max_element(freq.begin(), freq.end(), [](auto& a, auto& b) { return a.second < b.second; });
  if (common->second == d.size()) return Json(common->first);
  if (d.size() - common->second <= 4) {
    Json at = Json::object();
    for (std::size_t t = 0; t < d.size(); ++t)
      if (d[t] != common->first) at[std::to_string(t)] = d[t];
    return Json{{"default", common->first}, {"at", std::move(at)}};
  }
  return Json(d);
}

std::vector<std::size_t> delays_from_json(const Json& j, std::size_t T, const std::string& where) {
  if (j.is_number_integer()) return std::vector<std::size_t>(T, as_size(j, where));
  if (j.is_array()) {
    std::vector<std::size_t> out;
    for (const auto& x : j) out.push_back(as_size(x, where));
    return out;
  }
  std::vector<std::size_t> out(T, as_size(need(j, "default", where), where + ".default"));
  if (j.contains("at")) {
    if (!j["at"].is_object()) schema(where + ".at: expected an object keyed by period");
    for (const auto& [k, v] : j["at"].items()) {
      std::size_t t = 0;
      try {
        t = std::stoul(k);
      } catch (const std::exception&) {
        schema(where + ".at: bad period '" + k + "'");
      }
      if (t >= T) schema(where + ".at: period " + k + " beyond the game");
      out[t] = as_size(v, where + ".at");
    }
  }
  return out;
}

}  // namespace

Json to_json(const AttackGameSpec& g) {
  Json j;
  j["periods"] = g.periods;
  j["deadline"] = {{"alpha", g.deadline[0]}, {"beta", g.deadline[1]}};
  j["history_cap"] = g.history_cap;
  Json prior = Json::array();
  for (const auto& row : g.prior) {
    const auto& s = row.state;
    Json st;
    st["name"] = s.name;
    st["q"] = s.q;
    st["birth"] = {{"alpha", s.birth[0]}, {"beta", s.birth[1]}};
    st["observation"] = {{"alpha", s.observation[0]}, {"beta", s.observation[1]}};
    st["delays"] = {{"alpha", delays_to_json(s.delays[0])}, {"beta", delays_to_json(s.delays[1])}};
    prior.push_back({{"state", std::move(st)}, {"weight", to_string(row.weight)}});
  }
  j["prior"] = std::move(prior);
  return j;
}

AttackGameSpec game_spec_from_json(const Json& j) {
  const std::string w = "game";
  if (!j.is_object()) schema(w + ": expected an object");
  if (j.contains("generator")) {
    const std::string gen = as_string(j["generator"], w + ".generator");
    if (gen == "example1") return fixtures::example1_spec();
    if (gen == "example2") return fixtures::example2_spec();
    if (gen == "example3") return fixtures::example3_spec();
    if (gen == "tiny")
      return fixtures::tiny_spec(j.contains("t_hat_alpha") ? as_size(j["t_hat_alpha"], w + ".t_hat_alpha") : 2);
    schema(w + ".generator: unknown generator '" + gen + "'");
  }
  AttackGameSpec g;
  if (j.contains("periods")) g.periods = as_size(j["periods"], w + ".periods");
  if (j.contains("deadline"))
    for (int i = 0; i < 2; ++i) g.deadline[i] = as_size(need(j["deadline"], player_key(i), w + ".deadline"), w + ".deadline");
  if (j.contains("history_cap")) g.history_cap = as_size(j["history_cap"], w + ".history_cap");
  const Json& prior = need(j, "prior", w);
  if (!prior.is_array()) schema(w + ".prior: expected a list of rows");
  for (const auto& row : prior) {
    const Json& st = need(row, "state", w + ".prior");
    StateOfNature s;
    s.name = as_string(need(st, "name", w + ".prior.state"), w + ".prior.state.name");
    const std::string where = w + ".prior[" + s.name + "]";
    s.q = static_cast<int>(as_int(need(st, "q", where), where + ".q"));
    for (int i = 0; i < 2; ++i) {
      s.birth[i] = as_size(need(need(st, "birth", where), player_key(i), where + ".birth"), where + ".birth");
      s.observation[i] =
          as_size(need(need(st, "observation", where), player_key(i), where + ".observation"), where + ".observation");
      s.delays[i] = delays_from_json(need(need(st, "delays", where), player_key(i), where + ".delays"), g.periods,
                                     where + ".delays");
    }
    g.prior.push_back({std::move(s), as_rational(need(row, "weight", where), where + ".weight")});
  }
  return g;
}

Json event_to_json(const Event& e) {
  const Frame& f = e.frame();
  Json j = Json::object();
  for (std::size_t h = 0; h < f.history_count(); ++h) {
    Json times = Json::array();
    for (std::size_t t = 0; t < f.horizon(); ++t)
      if (e.contains(Point{HistoryId{h}, t})) times.push_back(t);
    if (!times.empty()) j[f.history_name(HistoryId{h})] = std::move(times);
  }
  return j;
}

// ---------- scenario execution ----------

namespace {

struct Model {
  std::string kind;
  FramePtr frame;
  std::optional<ProbFrame> prob;
  std::optional<BdtfFrame> bdtf;
  std::optional<BdtfSpec> bdtf_spec;
  std::optional<GameFrame> game;
  std::map<std::string, Event> events;
  std::map<std::string, Profile> profiles;
  Options options;
};

PlayerId player_of(const Model& m, const Json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  auto p = m.frame->find_player(name);
  if (!p) schema(where + ": unknown player '" + name + "'");
  return *p;
}

HistoryId history_of(const Model& m, const Json& j, const std::string& where) {
  const std::string name = as_string(j, where);
  auto h = m.frame->find_history(name);
  if (!h) schema(where + ": unknown history '" + name + "'");
  return *h;
}

std::vector<PlayerId> players_of(const Model& m, const Json& j, const std::string& where) {
  if (j.is_string() && j.get<std::string>() == "all") return m.frame->players();
  if (!j.is_array()) schema(where + ": expected a list of players or \"all\"");
  std::vector<PlayerId> out;
  for (const auto& x : j) out.push_back(player_of(m, x, where));
  return out;
}

Point point_of(const Model& m, const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) schema(where + ": expected [history, time]");
  const Point p{history_of(m, j[0], where), as_size(j[1], where)};
  if (!m.frame->valid(p)) schema(where + ": time beyond the horizon");
  return p;
}

CkAlgorithm single_algorithm(const Options& o) {
  return o.algorithm == "kleene" ? CkAlgorithm::kleene : CkAlgorithm::reachability;
}

Event checked_ck(const Model& m, const Profile& p, const Event& phi) {
  if (m.options.algorithm != "both") return ck_at(p, phi, single_algorithm(m.options));
  Event a = ck_at(p, phi, CkAlgorithm::kleene);
  if (ck_at(p, phi, CkAlgorithm::reachability) != a)
    throw InvariantViolation("kleene and reachability evaluations of relaxed common knowledge disagree");
  return a;
}

const Profile& profile_of(const Model& m, const Json& j, const std::string& where);

Event eval(const Model& m, const Json& e, const std::string& where) {
  const FramePtr& F = m.frame;
  if (e.is_string()) {
    const std::string name = e.get<std::string>();
    if (name == "all") return Event::all(F);
    if (name == "empty") return Event::empty(F);
    auto it = m.events.find(name);
    if (it == m.events.end()) schema(where + ": unknown event '" + name + "'");
    return it->second;
  }
  if (!e.is_object()) schema(where + ": expected an event name or expression");
  if (e.contains("points")) {
    const Json& pts = e["points"];
    if (!pts.is_object()) schema(where + ".points: expected {history: [times]}");
    std::vector<Point> v;
    for (const auto& [h, times] : pts.items()) {
      const HistoryId hid = history_of(m, Json(h), where + ".points");
      if (!times.is_array()) schema(where + ".points: expected time lists");
      for (const auto& t : times) {
        const Point p{hid, as_size(t, where + ".points")};
        if (!F->valid(p)) schema(where + ".points: time beyond the horizon");
        v.push_back(p);
      }
    }
    return Event::of_points(F, v);
  }
  if (e.contains("histories")) {
    HistorySet hs(F->history_count());
    if (!e["histories"].is_array()) schema(where + ".histories: expected a list");
    for (const auto& h : e["histories"]) hs.set(history_of(m, h, where + ".histories").index);
    return Event::cylinder(F, hs);
  }
  if (e.contains("times") || e.contains("from_time")) {
    std::set<std::size_t> times;
    if (e.contains("times")) {
      if (!e["times"].is_array()) schema(where + ".times: expected a list");
      for (const auto& t : e["times"]) times.insert(as_size(t, where + ".times"));
    } else {
      for (std::size_t t = as_size(e["from_time"], where + ".from_time"); t < F->horizon(); ++t) times.insert(t);
    }
    std::vector<Point> v;
    for (std::size_t h = 0; h < F->history_count(); ++h)
      for (auto t : times)
        if (t < F->horizon()) v.push_back(Point{HistoryId{h}, t});
    return Event::of_points(F, v);
  }
  if (e.contains("ken")) {
    const Json& k = e["ken"];
    const PlayerId i = player_of(m, need(k, "player", where + ".ken"), where + ".ken.player");
    const Point p = point_of(m, need(k, "at", where + ".ken"), where + ".ken.at");
    Bits b(F->point_count());
    for (auto idx : F->ken_members(i, F->ken_of(i, p))) b.set(idx);
    return Event(F, std::move(b));
  }
  if (e.contains("subjective_time")) {
    if (!m.bdtf) schema(where + ": subjective_time needs a bdtf scenario");
    const Json& s = e["subjective_time"];
    const PlayerId i = player_of(m, need(s, "player", where), where + ".player");
    return m.bdtf->subjective_time_event(i, as_int(need(s, "s", where), where + ".s"));
  }
  if (e.contains("initial_condition")) {
    if (!m.bdtf) schema(where + ": initial_condition needs a bdtf scenario");
    const auto names = as_strings(e["initial_condition"], where + ".initial_condition");
    HistorySet hs(F->history_count());
    for (std::size_t h = 0; h < hs.size(); ++h) {
      const auto& o = m.bdtf->spec.initial_conditions[m.bdtf->histories[h].o];
      hs[h] = std::find(names.begin(), names.end(), o) != names.end();
    }
    return Event::cylinder(F, hs);
  }
  if (e.contains("prospect")) {
    if (!m.game) schema(where + ": prospect needs an attack_game scenario");
    const std::int64_t q = as_int(e["prospect"], where + ".prospect");
    HistorySet hs(F->history_count());
    for (std::size_t h = 0; h < hs.size(); ++h) hs[h] = m.game->state(HistoryId{h}).q == q;
    return Event::cylinder(F, hs);
  }
  if (e.contains("posterior")) {
    if (!m.prob) schema(where + ": posterior needs an agreement scenario");
    const Json& s = e["posterior"];
    const PlayerId i = player_of(m, need(s, "player", where), where + ".player");
    return posterior_event(*m.prob, i, eval(m, need(s, "event", where), where + ".event"),
                           as_rational(need(s, "q", where), where + ".q"))
        .event;
  }
  if (!e.contains("op")) schema(where + ": unrecognized event expression");
  const std::string op = as_string(e["op"], where + ".op");
  std::vector<Event> args;
  if (e.contains("args")) {
    if (!e["args"].is_array()) schema(where + ".args: expected a list");
    for (std::size_t k = 0; k < e["args"].size(); ++k)
      args.push_back(eval(m, e["args"][k], where + ".args[" + std::to_string(k) + "]"));
  }
  auto arity = [&](std::size_t n) {
    if (args.size() != n) schema(where + ": '" + op + "' takes " + std::to_string(n) + " argument(s)");
  };
  static const std::map<std::string, EventOp> algebra{{"complement", EventOp::complement},
                                                      {"implies", EventOp::implies},
                                                      {"intersect", EventOp::intersect},
                                                      {"union", EventOp::unite},
                                                      {"difference", EventOp::difference}};
  if (auto it = algebra.find(op); it != algebra.end()) {
    try {
      return event_algebra(it->second, args);
    } catch (const PreconditionError& err) {
      schema(where + ": " + err.what());
    }
  }
  if (op == "knows") {
    arity(1);
    return knows(player_of(m, need(e, "player", where), where + ".player"), args[0]);
  }
  if (op == "everyone_knows" || op == "ck_traditional") {
    arity(1);
    const auto group = players_of(m, need(e, "players", where), where + ".players");
    if (group.empty()) schema(where + ": empty player group");
    return op == "everyone_knows" ? everyone_knows(group, args[0]) : ck_traditional(group, args[0]);
  }
  if (op == "box") return arity(1), box(args[0]);
  if (op == "diamond") return arity(1), diamond(args[0]);
  if (op == "knows_at") {
    arity(2);
    return knows_at(player_of(m, need(e, "player", where), where + ".player"), args[0], args[1]);
  }
  if (op == "everyone_at" || op == "ck_at" || op == "individualized") {
    arity(1);
    const Profile& p = profile_of(m, need(e, "profile", where), where + ".profile");
    if (op == "everyone_at") return everyone_at(p, args[0]);
    if (op == "ck_at") return checked_ck(m, p, args[0]);
    const PlayerId i = player_of(m, need(e, "player", where), where + ".player");
    if (!p.has(i)) schema(where + ": player is not in the profile");
    return p.anchor(i) & checked_ck(m, p, args[0]);
  }
  schema(where + ": unknown event operator '" + op + "'");
}

Profile build_profile(const Model& m, const Json& j, const std::string& where) {
  if (!j.is_object() || j.empty()) schema(where + ": expected {player: event}");
  std::vector<std::pair<PlayerId, Event>> anchors;
  for (const auto& [name, ev] : j.items())
    anchors.emplace_back(player_of(m, Json(name), where), eval(m, ev, where + "." + name));
  try {
    return Profile(m.frame, std::move(anchors));
  } catch (const PreconditionError& e) {
    schema(where + ": " + e.what());
  }
}

const Profile& profile_of(const Model& m, const Json& j, const std::string& where) {
  if (j.is_string()) {
    auto it = m.profiles.find(j.get<std::string>());
    if (it == m.profiles.end()) schema(where + ": unknown profile '" + j.get<std::string>() + "'");
    return it->second;
  }
  schema(where + ": expected a profile name");
}

Json histories_json(const Frame& f, const HistorySet& hs) {
  Json out = Json::array();
  for (std::size_t h = 0; h < hs.size(); ++h)
    if (hs.test(h)) out.push_back(f.history_name(HistoryId{h}));
  return out;
}

Json partition_json(const Frame& f, const HistoryPartition& p) {
  Json out = Json::array();
  for (const auto& cell : p.cells()) {
    Json c = Json::array();
    for (auto h : cell) c.push_back(f.history_name(h));
    out.push_back(std::move(c));
  }
  return out;
}

Json point_json(const Frame& f, Point p) { return Json::array({f.history_name(p.history), p.time}); }

Json optional_time(const std::optional<std::size_t>& t) { return t ? Json(*t) : Json(nullptr); }

struct Result {
  Result(Json v = nullptr) : value(std::move(v)) {}  // NOLINT(implicit)
  Json value;
  std::optional<Event> event;
  Json detail = Json::object();
};

// Query argument tables: required keys and the scenario kinds where the op is available.
struct OpInfo {
  std::vector<const char*> required;
  std::vector<const char*> kinds;  // empty = every kind
};

const std::map<std::string, OpInfo>& op_table() {
  static const std::map<std::string, OpInfo> t{
      {"event", {{"event"}, {}}},
      {"knows", {{"player", "event"}, {}}},
      {"is_local", {{"player", "event"}, {}}},
      {"everyone_knows", {{"players", "event"}, {}}},
      {"ck_traditional", {{"players", "event"}, {}}},
      {"box", {{"event"}, {}}},
      {"diamond", {{"event"}, {}}},
      {"is_time_invariant", {{"event"}, {}}},
      {"is_singular", {{"event"}, {}}},
      {"histories_of", {{"event"}, {}}},
      {"knows_at", {{"player", "anchor", "event"}, {}}},
      {"everyone_at", {{"profile", "event"}, {}}},
      {"ck_at", {{"profile", "event"}, {}}},
      {"individualized", {{"player", "profile", "event"}, {}}},
      {"check_induction_rule", {{"profile", "event"}, {}}},
      {"co_occurs", {{"profile"}, {}}},
      {"reachability_graph", {{"profile"}, {}}},
      {"components", {{"profile"}, {}}},
      {"check_cooccurrence_theorem", {{"profile", "event", "player"}, {}}},
      {"diagnose", {{"profile", "event", "history"}, {}}},
      {"posterior", {{"player", "event", "at"}, {"agreement"}}},
      {"posterior_event", {{"player", "event", "q"}, {"agreement"}}},
      {"verify_agreement", {{"profile", "event", "q_alpha", "q_beta"}, {"agreement"}}},
      {"frame_summary", {{}, {}}},
      {"verify_no_new_ck", {{"history", "event"}, {"bdtf"}}},
      {"roundtrip_ck_facts", {{"history"}, {"bdtf"}}},
      {"slice_partition", {{"player", "anchor"}, {"bdtf", "gp82"}}},
      {"partition_meet", {{"slices"}, {"bdtf", "gp82"}}},
      {"getck_times", {{"history"}, {"bdtf", "gp82"}}},
      {"gp82_dialogue", {{}, {"gp82"}}},
      {"compute_sck", {{}, {"attack_game"}}},
      {"play", {{"strategy"}, {"attack_game"}}},
      {"expected_welfare", {{"strategy"}, {"attack_game"}}},
      {"verify_never_unsuccessful", {{"strategy"}, {"attack_game"}}},
      {"brute_force_frontier", {{}, {"attack_game"}}},
  };
  return t;
}

AttackStrategyPair strategy_of(const Model& m, const Json& j, const std::string& where) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "sck") return compute_sck(*m.game).strategies;
    if (s == "never") return AttackStrategyPair::never(*m.game);
    schema(where + ": strategy must be \"sck\", \"never\" or {alpha: event, beta: event}");
  }
  return AttackStrategyPair::from_events(*m.game, eval(m, need(j, "alpha", where), where + ".alpha"),
                                         eval(m, need(j, "beta", where), where + ".beta"));
}

Json outcomes_json(const GameFrame& g, const AttackStrategyPair& s) {
  Json out = Json::object();
  for (std::size_t h = 0; h < g.spec.prior.size(); ++h) {
    const Outcome o = play(g, s, HistoryId{h});
    out[g.state(HistoryId{h}).name] = {{"alpha", optional_time(o.attack_time[0])},
                                       {"beta", optional_time(o.attack_time[1])},
                                       {"success", o.success},
                                       {"utility", to_string(o.utility)}};
  }
  return out;
}

Json welfare_json(const GameFrame& g, const AttackStrategyPair& s) {
  const Welfare w = expected_welfare(g, s);
  Json per = Json::object();
  for (std::size_t h = 0; h < w.per_state.size(); ++h) per[g.state(HistoryId{h}).name] = to_string(w.per_state[h]);
  return {{"expected", to_string(w.expected)}, {"per_state", std::move(per)}};
}

Result execute(Model& m, const Json& q, const std::string& where) {
  const std::string op = q["op"].get<std::string>();
  const Frame& f = *m.frame;
  auto ev = [&](const char* key) { return eval(m, q.at(key), where + "." + key); };
  auto pl = [&](const char* key) { return player_of(m, q.at(key), where + "." + key); };
  auto pr = [&](const char* key) -> const Profile& { return profile_of(m, q.at(key), where + "." + key); };
  auto event_result = [](Event e) {
    Result r;
    r.value = event_to_json(e);
    r.event = std::move(e);
    return r;
  };

  if (op == "event") return event_result(ev("event"));
  if (op == "knows") return event_result(knows(pl("player"), ev("event")));
  if (op == "is_local") return Result{is_local(pl("player"), ev("event"))};
  if (op == "everyone_knows" || op == "ck_traditional") {
    const auto group = players_of(m, q["players"], where + ".players");
    if (group.empty()) schema(where + ": empty player group");
    if (op == "everyone_knows") return event_result(everyone_knows(group, ev("event")));
    TraditionalCk c = ck_traditional_layers(group, ev("event"));
    Result r = event_result(c.result);
    r.detail["iterations"] = c.iterations;
    if (m.options.verbosity >= 2) {
      Json layers = Json::array();
      for (const auto& l : c.layers) layers.push_back(event_to_json(l));
      r.detail["layers"] = std::move(layers);
    }
    return r;
  }
  if (op == "box") return event_result(box(ev("event")));
  if (op == "diamond") return event_result(diamond(ev("event")));
  if (op == "is_time_invariant") return Result{is_time_invariant(ev("event"))};
  if (op == "is_singular") return Result{is_singular(ev("event"))};
  if (op == "histories_of") return Result{histories_json(f, histories_of(ev("event")))};
  if (op == "knows_at") return event_result(knows_at(pl("player"), ev("anchor"), ev("event")));
  if (op == "everyone_at") return event_result(everyone_at(pr("profile"), ev("event")));
  if (op == "ck_at" || op == "individualized") {
    const Profile& p = pr("profile");
    const Event phi = ev("event");
    Event c = checked_ck(m, p, phi);
    Result r;
    if (op == "individualized") {
      const PlayerId i = pl("player");
      if (!p.has(i)) schema(where + ": player is not in the profile");
      r = event_result(individualized(i, p, phi, single_algorithm(m.options)));
      if (*r.event != (p.anchor(i) & c)) throw InvariantViolation("individualized event disagrees with ck_at");
    } else {
      r = event_result(c);
    }
    // explain every history left out
    Json why = Json::object();
    for (std::size_t h = 0; h < f.history_count(); ++h) {
      if (c.contains(Point{HistoryId{h}, 0})) continue;
      const CkDiagnosis d = diagnose(p, phi, HistoryId{h});
      why[f.history_name(HistoryId{h})] = d.message;
    }
    if (!why.empty() && m.options.verbosity >= 1) r.detail["excluded"] = std::move(why);
    if (m.options.verbosity >= 2) {
      const KleeneTrace tr = ck_at_trace(p, phi);
      Json it = Json::array();
      for (const auto& x : tr.iterates) it.push_back(event_to_json(x));
      r.detail["kleene_iterates"] = std::move(it);
    }
    return r;
  }
  if (op == "check_induction_rule") {
    std::optional<Event> xi;
    if (q.contains("xi")) xi = ev("xi");
    const InductionReport rep = check_induction_rule(pr("profile"), ev("event"), xi);
    Json v = {{"premise", rep.premise_holds}, {"conclusion", rep.conclusion_holds}};
    if (rep.lemma_premise_holds) v["lemma_premise"] = *rep.lemma_premise_holds;
    if (rep.lemma_conclusion_holds) v["lemma_conclusion"] = *rep.lemma_conclusion_holds;
    return Result{v};
  }
  if (op == "co_occurs") {
    HistorySet hs(f.history_count());
    if (q.contains("histories")) {
      if (!q["histories"].is_array()) schema(where + ".histories: expected a list");
      for (const auto& h : q["histories"]) hs.set(history_of(m, h, where + ".histories").index);
    } else {
      hs.set();
    }
    return Result{co_occurs(pr("profile"), hs)};
  }
  if (op == "reachability_graph" || op == "components") {
    const ReachabilityGraph g = reachability_graph(pr("profile"));
    Json comps = partition_json(f, components(g));
    if (op == "components") return Result{comps};
    Json edges = Json::array();
    for (const auto& e : g.edges)
      edges.push_back({{"a", f.history_name(e.a)},
                       {"b", f.history_name(e.b)},
                       {"player", f.player_name(e.player)},
                       {"from", point_json(f, e.from)},
                       {"to", point_json(f, e.to)}});
    return Result{{{"edges", std::move(edges)}, {"components", std::move(comps)}}};
  }
  if (op == "check_cooccurrence_theorem") {
    const CooccurrenceReport rep = check_cooccurrence_theorem(pr("profile"), ev("event"), pl("player"));
    return Result{{{"anchors_in_ck", rep.anchors_in_ck}, {"cooccurs_everywhere", rep.cooccurs_everywhere}}};
  }
  if (op == "diagnose") {
    const CkDiagnosis d = diagnose(pr("profile"), ev("event"), history_of(m, q["history"], where + ".history"));
    Json v = {{"failure", std::string(to_string(d.failure))}, {"component", d.component}, {"message", d.message}};
    if (d.witness_history) v["witness_history"] = f.history_name(*d.witness_history);
    if (d.witness_point) v["witness_point"] = point_json(f, *d.witness_point);
    if (d.player) v["player"] = f.player_name(*d.player);
    return Result{v};
  }
  if (op == "posterior")
    return Result{to_string(posterior(*m.prob, pl("player"), ev("event"), point_of(m, q["at"], where + ".at")))};
  if (op == "posterior_event") {
    const PosteriorEvent pe = posterior_event(*m.prob, pl("player"), ev("event"), as_rational(q["q"], where + ".q"));
    Result r = event_result(pe.event);
    if (!pe.excluded.empty()) {
      Json ex = Json::array();
      for (auto p : pe.excluded) ex.push_back(point_json(f, p));
      r.detail["excluded_nonsingular"] = std::move(ex);
    }
    return r;
  }
  if (op == "verify_agreement") {
    const AgreementReport rep = verify_agreement(*m.prob, pr("profile"), ev("event"),
                                                 as_rational(q["q_alpha"], where + ".q_alpha"),
                                                 as_rational(q["q_beta"], where + ".q_beta"));
    return Result{{{"ck_nonempty", rep.ck_nonempty}, {"equal", rep.equal}, {"ck", event_to_json(rep.ck)}}};
  }
  if (op == "frame_summary") {
    Json kens = Json::object();
    for (PlayerId i : f.players()) kens[f.player_name(i)] = f.ken_count(i);
    return Result{{{"histories", f.history_count()}, {"horizon", f.horizon()}, {"kens", std::move(kens)}}};
  }
  if (op == "verify_no_new_ck") {
    try {
      const NoNewCkReport rep = verify_no_new_ck(*m.bdtf, history_of(m, q["history"], where + ".history"), ev("event"));
      return Result{{{"hypothesis", true}, {"ck_at_zero", rep.ck_at_zero}, {"first_violation", optional_time(rep.first_violation)}}};
    } catch (const HypothesisViolation& e) {
      return Result{{{"hypothesis", false}, {"message", e.what()}}};
    }
  }
  if (op == "roundtrip_ck_facts") {
    const RoundTrip rt = roundtrip_ck_facts(*m.bdtf, history_of(m, q["history"], where + ".history"));
    return Result{{{"a_role", f.player_name(rt.a_role)},
                   {"t1", rt.t1},
                   {"t2", rt.t2},
                   {"t3", rt.t3},
                   {"Z", rt.Z},
                   {"induction_premise", rt.induction_premise},
                   {"sigma_d_ck", rt.sigma_d_ck},
                   {"sigma_z_ck", rt.sigma_z_ck},
                   {"verified", rt.verified()}}};
  }
  if (op == "slice_partition") {
    const SlicePartition sp = slice_partition(pl("player"), ev("anchor"));
    return Result{partition_json(f, sp.cells)};
  }
  if (op == "partition_meet") {
    const Json& sl = q["slices"];
    if (!sl.is_array() || sl.size() != 2) schema(where + ".slices: expected two {player, anchor} entries");
    std::vector<HistoryPartition> parts;
    for (const auto& s : sl)
      parts.push_back(slice_partition(player_of(m, need(s, "player", where), where + ".slices.player"),
                                      eval(m, need(s, "anchor", where), where + ".slices.anchor"))
                          .cells);
    return Result{partition_json(f, partition_meet(parts[0], parts[1]))};
  }
  if (op == "getck_times") {
    const GetCkTimes g = getck_times(*m.bdtf, history_of(m, q["history"], where + ".history"));
    Json v = {{"t_hat", {{"alpha", g.t_hat[0]}, {"beta", g.t_hat[1]}}},
              {"ell_prime", g.ell_prime},
              {"ell_max", g.ell_max},
              {"cell", histories_json(f, g.cell)},
              {"verified", g.verified}};
    return Result{v};
  }
  if (op == "gp82_dialogue") {
    const Gp82Result g = gp82_dialogue(*m.bdtf_spec);
    Json rows = Json::array();
    for (const auto& row : g.rows) {
      Json r = {{"history", f.history_name(row.history)},
                {"t_hat", {{"alpha", row.t_hat[0]}, {"beta", row.t_hat[1]}}},
                {"q", {{"alpha", to_string(row.q[0])}, {"beta", to_string(row.q[1])}}},
                {"equal", row.equal},
                {"ck_nonempty", row.ck_nonempty},
                {"traditional_empty_after_zero", row.traditional_empty_after_zero}};
      if (m.options.verbosity >= 2) r["transcript"] = row.transcript;
      rows.push_back(std::move(r));
    }
    return Result{{{"verdict", g.verdict}, {"rows", std::move(rows)}}};
  }
  if (op == "compute_sck") {
    const SckResult s = compute_sck(*m.game);
    Json v = {{"outcomes", outcomes_json(*m.game, s.strategies)},
              {"welfare", welfare_json(*m.game, s.strategies)["expected"]},
              {"never_unsuccessful", verify_never_unsuccessful(*m.game, s.strategies)},
              {"ck_nonempty", !s.ck.is_empty()},
              {"elimination_rounds", s.elimination_rounds}};
    Result r{v};
    r.detail["witness"] = {{"alpha", event_to_json(s.witness.anchor(kAlpha))},
                           {"beta", event_to_json(s.witness.anchor(kBeta))}};
    return r;
  }
  if (op == "play") return Result{outcomes_json(*m.game, strategy_of(m, q["strategy"], where + ".strategy"))};
  if (op == "expected_welfare") return Result{welfare_json(*m.game, strategy_of(m, q["strategy"], where + ".strategy"))};
  if (op == "verify_never_unsuccessful")
    return Result{verify_never_unsuccessful(*m.game, strategy_of(m, q["strategy"], where + ".strategy"))};
  if (op == "brute_force_frontier") {
    const std::size_t cap = q.contains("cap") ? as_size(q["cap"], where + ".cap") : m.options.cap;
    const FrontierReport r = brute_force_frontier(*m.game, cap);
    return Result{{{"alpha_strategies", r.alpha_strategies},
                   {"beta_strategies", r.beta_strategies},
                   {"never_unsuccessful_pairs", r.never_unsuccessful_pairs},
                   {"sck_never_unsuccessful", r.sck_never_unsuccessful},
                   {"pareto", r.pareto},
                   {"nash", r.nash},
                   {"positive_welfare_equilibrium", r.positive_welfare_equilibrium},
                   {"ck_nonempty", r.ck_nonempty},
                   {"corollary", r.corollary},
                   {"earliest", r.earliest},
                   {"success_iff_ck", r.success_iff_ck},
                   {"all_hold", r.all_hold()}}};
  }
  schema(where + ": unknown op '" + op + "'");
}

// expected values match when every key given in the expectation matches
bool matches(const Json& expect, const Json& actual) {
  if (expect.is_object()) {
    if (!actual.is_object()) return false;
    for (const auto& [k, v] : expect.items())
      if (!actual.contains(k) || !matches(v, actual[k])) return false;
    return true;
  }
  if (expect.is_array()) {
    if (!actual.is_array() || actual.size() != expect.size()) return false;
    for (std::size_t k = 0; k < expect.size(); ++k)
      if (!matches(expect[k], actual[k])) return false;
    return true;
  }
  if (expect.is_string() && actual.is_string()) {
    if (expect == actual) return true;
    try {
      return parse_rational(expect.get<std::string>()) == parse_rational(actual.get<std::string>());
    } catch (const PreconditionError&) {
      return false;
    }
  }
  if (expect.is_number() && actual.is_number()) return expect.get<double>() == actual.get<double>();
  return expect == actual;
}

void build_model(Model& m, const Json& s) {
  static const std::set<std::string> kinds{"frame", "bdtf", "gp82", "agreement", "attack_game"};
  m.kind = as_string(need(s, "kind", "scenario"), "scenario.kind");
  if (!kinds.count(m.kind)) schema("scenario.kind: unknown kind '" + m.kind + "'");
  if (m.kind == "frame") {
    m.frame = frame_from_json(need(s, "frame", "scenario"));
  } else if (m.kind == "agreement") {
    m.prob = prob_frame_from_json(s);
    m.frame = m.prob->frame_ptr();
  } else if (m.kind == "bdtf" || m.kind == "gp82") {
    m.bdtf_spec = bdtf_spec_from_json(need(s, "bdtf", "scenario"));
    m.bdtf = build_bdtf_frame(*m.bdtf_spec);
    m.frame = m.bdtf->frame;
  } else {
    m.game = build_game_frame(game_spec_from_json(need(s, "game", "scenario")));
    m.frame = m.game->frame;
  }
  if (s.contains("events")) {
    if (!s["events"].is_object()) schema("scenario.events: expected {name: expression}");
    for (const auto& [name, e] : s["events"].items()) m.events.insert_or_assign(name, eval(m, e, "events." + name));
  }
  if (s.contains("profiles")) {
    if (!s["profiles"].is_object()) schema("scenario.profiles: expected {name: {player: event}}");
    for (const auto& [name, p] : s["profiles"].items())
      m.profiles.insert_or_assign(name, build_profile(m, p, "profiles." + name));
  }
}

void validate_queries(const Model& m, const Json& queries) {
  if (!queries.is_array()) schema("scenario.queries: expected a list");
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const std::string where = "queries[" + std::to_string(k) + "]";
    const Json& q = queries[k];
    const std::string op = as_string(need(q, "op", where), where + ".op");
    auto it = op_table().find(op);
    if (it == op_table().end()) schema(where + ": unknown op '" + op + "'");
    for (const char* key : it->second.required) need(q, key, where + " (" + op + ")");
    const auto& kinds = it->second.kinds;
    if (!kinds.empty() && std::find(kinds.begin(), kinds.end(), m.kind) == kinds.end())
      schema(where + ": op '" + op + "' is not available in " + m.kind + " scenarios");
  }
}

std::string describe_error(const char* what, const std::exception& e) { return std::string(what) + ": " + e.what(); }

}  // namespace

RunOutcome run(const Json& scenario, const Options& options) {
  RunOutcome out;
  Json& rep = out.report;
  std::ostringstream sum;
  const std::string name = scenario.is_object() && scenario.contains("name") && scenario["name"].is_string()
                               ? scenario["name"].get<std::string>()
                               : std::string("(unnamed)");
  rep["scenario"] = name;
  rep["algorithm"] = options.algorithm;
  rep["seed"] = options.seed;
  rep["queries"] = Json::array();
  Model m;
  m.options = options;
  if (options.algorithm != "kleene" && options.algorithm != "reachability" && options.algorithm != "both") {
    out.exit_code = kSchema;
    rep["error"] = "unknown algorithm '" + options.algorithm + "'";
    out.summary = "error: " + rep["error"].get<std::string>() + "\n";
    return out;
  }
  const Json empty = Json::array();
  try {
    if (!scenario.is_object()) schema("scenario: expected a JSON object");
    build_model(m, scenario);
    validate_queries(m, scenario.contains("queries") ? scenario["queries"] : empty);
  } catch (const SchemaError& e) {
    out.exit_code = kSchema;
    rep["error"] = describe_error("schema error", e);
  } catch (const std::exception& e) {
    out.exit_code = kExecution;
    rep["error"] = describe_error("model construction failed", e);
  }
  if (out.exit_code != kOk) {
    out.summary = name + ": " + rep["error"].get<std::string>() + "\n";
    return out;
  }
  rep["kind"] = m.kind;
  sum << name << " (" << m.kind << ", " << m.frame->history_count() << " histories, horizon " << m.frame->horizon()
      << ")\n";

  const Json& queries = scenario.contains("queries") ? scenario["queries"] : empty;
  std::size_t matched = 0, mismatched = 0, unchecked = 0;
  for (std::size_t k = 0; k < queries.size(); ++k) {
    const Json& q = queries[k];
    const std::string where = "queries[" + std::to_string(k) + "]";
    Json entry;
    entry["index"] = k;
    entry["op"] = q["op"];
    if (q.contains("label")) entry["label"] = q["label"];
    const std::string label = q.contains("label") && q["label"].is_string() ? q["label"].get<std::string>()
                                                                            : q["op"].get<std::string>();
    try {
      Result r = execute(m, q, where);
      entry["result"] = r.value;
      std::string status = "unchecked";
      if (q.contains("expect")) {
        bool ok = false;
        if (r.event) ok = eval(m, q["expect"], where + ".expect") == *r.event;
        else ok = matches(q["expect"], r.value);
        status = ok ? "match" : "mismatch";
        entry["expect"] = q["expect"];
      }
      entry["status"] = status;
      if (!r.detail.empty()) entry["detail"] = std::move(r.detail);
      if (status == "match") ++matched;
      else if (status == "mismatch") ++mismatched;
      else ++unchecked;
      sum << "  [" << (status == "match" ? " ok " : status == "mismatch" ? "FAIL" : " -- ") << "] " << label;
      if (status == "mismatch" || options.verbosity >= 2) sum << " -> " << entry["result"].dump();
      sum << "\n";
      rep["queries"].push_back(std::move(entry));
    } catch (const SchemaError& e) {
      out.exit_code = kSchema;
      rep["error"] = describe_error("schema error", e);
    } catch (const std::exception& e) {
      out.exit_code = kExecution;
      rep["error"] = describe_error((label + " failed").c_str(), e);
    }
    if (out.exit_code != kOk) {
      sum << "  error: " << rep["error"].get<std::string>() << "\n";
      break;
    }
  }
  rep["summary"] = {{"queries", queries.size()}, {"matched", matched}, {"mismatched", mismatched}, {"unchecked", unchecked}};
  if (out.exit_code == kOk && mismatched > 0) out.exit_code = kMismatch;
  sum << "  " << matched << " matched, " << mismatched << " mismatched, " << unchecked << " unchecked\n";
  out.summary = sum.str();
  return out;
}

RunOutcome run_text(const std::string& text, const Options& options) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    RunOutcome out;
    out.exit_code = kSchema;
    out.report["error"] = std::string("parse error: ") + e.what();
    out.summary = out.report["error"].get<std::string>() + "\n";
    return out;
  }
  return run(j, options);
}

}  // namespace rck::scenario
