#include "rck/fixtures.hpp"

namespace rck::fixtures {

BdtfSpec hm_spec() {
  BdtfSpec s;
  s.initial_conditions = {"o"};
  s.initial_partition = {std::vector<std::int64_t>{0}, std::vector<std::int64_t>{0}};
  s.single_dimensional = 3;
  s.horizon = 6;
  return s;
}

BdtfSpec hm_timestamped_spec() {
  BdtfSpec s = hm_spec();
  s.timestamps = true;
  s.horizon = 16;
  return s;
}

BdtfSpec control_spec() {
  BdtfSpec s = hm_spec();
  s.single_dimensional = 2;
  return s;
}

BdtfSpec refinement_spec(std::size_t round_trip, std::size_t horizon, bool timestamps) {
  BdtfSpec s;
  s.initial_conditions = {"x", "y"};
  s.initial_partition = {std::vector<std::int64_t>{0, 1}, std::vector<std::int64_t>{0, 0}};
  s.single_dimensional = round_trip;
  s.horizon = horizon;
  s.signals = {SignalRule::ken, SignalRule::heartbeat};
  s.timestamps = timestamps;
  return s;
}

BdtfSpec gp82_spec() {
  BdtfSpec s;
  s.initial_conditions = {"s1", "s2", "s3", "s4"};
  s.initial_partition = {std::vector<std::int64_t>{0, 0, 1, 1}, std::vector<std::int64_t>{0, 0, 0, 1}};
  s.single_dimensional = 3;
  s.horizon = 20;
  s.signals = {SignalRule::posterior, SignalRule::posterior};
  s.timestamps = true;
  s.posterior_target = {"s1", "s4"};
  return s;
}

HmEvents hm_events(const BdtfFrame& bf) {
  return HmEvents{bf.subjective_time_event(kAlpha, 0), bf.subjective_time_event(kBeta, 0)};
}

FramePtr lost_message_frame() {
  const BdtfFrame bf = build_bdtf_frame(hm_spec());
  const Frame& f = *bf.frame;
  const std::size_t H = f.horizon();
  std::vector<std::vector<std::int64_t>> labels(2, std::vector<std::int64_t>(3 * H));
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t h = 0; h < 2; ++h)
      for (std::size_t t = 0; t < H; ++t) labels[i][h * H + t] = f.ken_of(PlayerId{i}, Point{HistoryId{h}, t});
  const auto pre_birth = static_cast<std::int64_t>(f.ken_of(kBeta, Point{HistoryId{0}, 0}));
  for (std::size_t t = 0; t < H; ++t) {
    labels[0][2 * H + t] = labels[0][t];
    labels[1][2 * H + t] = pre_birth;
  }
  return make_frame({"w1", "w2", "w3"}, H, {"alpha", "beta"}, labels);
}

ProbFrame coin_frame() {
  const std::size_t H = 3;
  std::vector<std::vector<std::int64_t>> labels(2, std::vector<std::int64_t>(2 * H));
  for (std::size_t h = 0; h < 2; ++h)
    for (std::size_t t = 0; t < H; ++t) {
      labels[0][h * H + t] = t == 0 ? 0 : static_cast<std::int64_t>(1 + 2 * t + h);
      labels[1][h * H + t] = static_cast<std::int64_t>(t);
    }
  return ProbFrame(make_frame({"heads", "tails"}, H, {"alpha", "beta"}, labels), {Rational(1, 2), Rational(1, 2)});
}

namespace {

StateOfNature base_state(std::string name, int q, std::size_t T) {
  StateOfNature s;
  s.name = std::move(name);
  s.q = q;
  s.birth = {0, 0};
  s.observation = {0, T};
  s.delays = {std::vector<std::size_t>(T, T), std::vector<std::size_t>(T, T)};
  return s;
}

}  // namespace

AttackGameSpec example1_spec() {
  AttackGameSpec g;
  const std::size_t T = g.periods;
  for (int q = 0; q <= 1; ++q)
    for (std::size_t z = 0; z <= 1; ++z) {
      StateOfNature s = base_state("q" + std::to_string(q) + "z" + std::to_string(z), q, T);
      s.birth[1] = z;
      s.delays[1].assign(T, 50 + z);
      s.delays[0].assign(T, 51 - z);
      g.prior.push_back({std::move(s), Rational(1, 4)});
    }
  return g;
}

AttackGameSpec example2_spec() {
  AttackGameSpec g;
  const std::size_t T = g.periods;
  for (int q = 0; q <= 1; ++q)
    for (std::size_t z = 0; z <= 1; ++z)
      for (std::size_t d = 1; d <= 100; ++d) {
        StateOfNature s =
            base_state("q" + std::to_string(q) + "z" + std::to_string(z) + "d" + std::to_string(d), q, T);
        s.birth[1] = z;
        s.delays[1].assign(T, d);
        s.delays[0].assign(T, 3 - z);
        g.prior.push_back({std::move(s), Rational(1, 400)});
      }
  return g;
}

namespace {

AttackGameSpec first_message_game(std::size_t T, std::size_t late_birth, std::array<std::size_t, 2> deadline) {
  AttackGameSpec g;
  g.periods = T;
  g.deadline = deadline;
  for (int q = 0; q <= 1; ++q)
    for (std::size_t z : {std::size_t{0}, late_birth}) {
      StateOfNature s = base_state("q" + std::to_string(q) + "z" + std::to_string(z), q, T);
      s.birth[1] = z;
      // only messages sent at the sender's subjective time 0 arrive, one period later
      for (std::size_t t = 0; t < T; ++t) {
        s.delays[1][t] = t == 0 ? 1 : T;
        s.delays[0][t] = t == z ? 1 : T;
      }
      g.prior.push_back({std::move(s), Rational(1, 4)});
    }
  return g;
}

}  // namespace

AttackGameSpec example3_spec() { return first_message_game(100, 100, {49, 99}); }

AttackGameSpec tiny_spec(std::size_t t_hat_alpha) { return first_message_game(6, 6, {t_hat_alpha, 5}); }

}  // namespace rck::fixtures
