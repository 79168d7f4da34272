#include "rck/bdtf.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

#include "rck/errors.hpp"
#include "rck/kernel.hpp"
#include "rck/relaxed_ck.hpp"

namespace rck {

std::string to_string(SignalRule r) {
  switch (r) {
    case SignalRule::none: return "none";
    case SignalRule::heartbeat: return "heartbeat";
    case SignalRule::ken: return "ken";
    case SignalRule::initial_cell: return "initial_cell";
    case SignalRule::posterior: return "posterior";
  }
  return "none";
}

SignalRule parse_signal_rule(std::string_view s) {
  for (SignalRule r : {SignalRule::none, SignalRule::heartbeat, SignalRule::ken, SignalRule::initial_cell,
                       SignalRule::posterior})
    if (to_string(r) == s) return r;
  throw PreconditionError("unknown signal rule '" + std::string(s) + "'");
}

std::size_t timing_combinations(const BdtfSpec& spec) {
  if (spec.single_dimensional) return *spec.single_dimensional >= 2 ? *spec.single_dimensional - 1 : 0;
  const std::size_t z = spec.z_max + 1;
  return z * z * spec.d_max * spec.d_max;
}

std::string history_label(const BdtfSpec& spec, const BdtfHistory& h) {
  return spec.initial_conditions.at(h.o) + ":z" + std::to_string(h.z[0]) + "," + std::to_string(h.z[1]) + ":d" +
         std::to_string(h.d[0]) + "," + std::to_string(h.d[1]);
}

std::optional<HistoryId> BdtfFrame::find(const BdtfHistory& h) const {
  for (std::size_t k = 0; k < histories.size(); ++k)
    if (histories[k] == h) return HistoryId{k};
  return std::nullopt;
}

Event BdtfFrame::subjective_time_event(PlayerId i, std::int64_t s) const {
  Event e(frame);
  std::vector<Point> pts;
  for (std::size_t h = 0; h < histories.size(); ++h) {
    const std::int64_t t = static_cast<std::int64_t>(histories[h].z[i.index]) + s;
    if (s >= 0 && t < static_cast<std::int64_t>(frame->horizon()))
      pts.push_back(Point{HistoryId{h}, static_cast<std::size_t>(t)});
  }
  return Event::of_points(frame, pts);
}

std::string BdtfFrame::signal_text(PlayerId sender, std::uint32_t id) const {
  if (id == 0) return "empty";
  const SignalInfo& s = signal(sender, id);
  std::string out;
  if (s.stamp >= 0) out += "@" + std::to_string(s.stamp);
  if (s.quote >= 0) out += " re@" + std::to_string(s.quote);
  if (!s.payload_text.empty()) out += (out.empty() ? "" : " ") + s.payload_text;
  return out;
}

namespace {

constexpr std::int64_t kUnset = -2;
constexpr std::int64_t kBusy = -3;

// Ken keys are computed on the untruncated model: a key at (h, t) may be
// requested for t beyond the horizon when a posterior needs a whole
// subjective-time slice. The frame is the truncation to the horizon.
class Builder {
 public:
  Builder(const BdtfSpec& spec, std::vector<BdtfHistory> hist) : spec_(spec), hist_(std::move(hist)) {
    for (int i = 0; i < 2; ++i) {
      key_memo_[i].resize(hist_.size());
      sent_memo_[i].resize(hist_.size());
      signals_[i].push_back(SignalInfo{});  // id 0: empty signal
    }
    if (spec_.signals[0] == SignalRule::posterior || spec_.signals[1] == SignalRule::posterior) setup_posterior();
  }

  std::int64_t key(int i, std::size_t h, std::size_t t) {
    auto& memo = key_memo_[i][h];
    if (memo.size() <= t) memo.resize(t + 1, kUnset);
    if (memo[t] == kBusy) throw PreconditionError("signalling functions depend on each other cyclically");
    if (memo[t] != kUnset) return memo[t];
    memo[t] = kBusy;
    const BdtfHistory& w = hist_[h];
    const std::int64_t cell = spec_.initial_partition[i][w.o];
    std::tuple<int, std::int64_t, std::int64_t> k;
    if (t < w.z[i]) k = {0, cell, 0};
    else if (t == w.z[i]) k = {1, cell, 0};
    else {
      const std::int64_t prev = key(i, h, t - 1);
      k = {2, prev, static_cast<std::int64_t>(received(i, h, t))};
    }
    auto [it, fresh] = key_ids_[i].try_emplace(k, static_cast<std::int64_t>(key_ids_[i].size()));
    key_memo_[i][h][t] = it->second;
    return it->second;
  }

  std::uint32_t received(int i, std::size_t h, std::size_t t) {
    const std::size_t d = hist_[h].d[i];
    if (t < d) return 0;
    return sent(1 - i, h, t - d);
  }

  std::uint32_t sent(int j, std::size_t h, std::size_t t) {
    auto& memo = sent_memo_[j][h];
    if (memo.size() <= t) memo.resize(t + 1, kUnset);
    if (memo[t] == kBusy) throw PreconditionError("signalling functions depend on each other cyclically");
    if (memo[t] != kUnset) return static_cast<std::uint32_t>(memo[t]);
    memo[t] = kBusy;
    const BdtfHistory& w = hist_[h];
    std::uint32_t id = 0;
    const SignalRule rule = spec_.signals[j];
    if (t >= w.z[j] && (rule != SignalRule::none || spec_.timestamps)) {
      const std::int64_t s = static_cast<std::int64_t>(t - w.z[j]);
      SignalInfo info;
      if (spec_.timestamps) {
        info.stamp = s;
        const std::uint32_t got = received(j, h, t);
        info.quote = got == 0 ? -1 : signals_[1 - j][got].stamp;
      }
      switch (rule) {
        case SignalRule::none: break;
        case SignalRule::heartbeat: info.payload = 1; info.payload_text = "alive"; break;
        case SignalRule::ken:
          info.payload = key(j, h, t);
          info.payload_text = "ken#" + std::to_string(info.payload);
          break;
        case SignalRule::initial_cell:
          info.payload = spec_.initial_partition[j][w.o];
          info.payload_text = "cell#" + std::to_string(info.payload);
          break;
        case SignalRule::posterior: {
          const Rational q = posterior(j, key(j, h, t), s);
          auto [pit, fresh] = posterior_ids_.try_emplace(q, static_cast<std::int64_t>(posterior_ids_.size()));
          info.payload = pit->second;
          info.payload_text = "Pr=" + to_string(q);
          break;
        }
      }
      auto [it, fresh] = signal_ids_[j].try_emplace(std::make_tuple(info.stamp, info.quote, info.payload),
                                                    static_cast<std::uint32_t>(signals_[j].size()));
      if (fresh) signals_[j].push_back(info);
      id = it->second;
    }
    sent_memo_[j][h][t] = id;
    return id;
  }

  const std::vector<BdtfHistory>& histories() const { return hist_; }
  std::array<std::vector<SignalInfo>, 2>& signals() { return signals_; }

 private:
  void setup_posterior() {
    const std::size_t n_o = spec_.initial_conditions.size();
    std::vector<Rational> prior = spec_.prior;
    if (prior.empty()) prior.assign(n_o, Rational(1, static_cast<long>(n_o)));
    const Rational per_timing = Rational(1, static_cast<long>(timing_combinations(spec_)));
    target_.assign(n_o, 0);
    for (const auto& name : spec_.posterior_target) {
      auto it = std::find(spec_.initial_conditions.begin(), spec_.initial_conditions.end(), name);
      target_[static_cast<std::size_t>(it - spec_.initial_conditions.begin())] = 1;
    }
    for (const auto& w : hist_) weight_.push_back(prior[w.o] * per_timing);
  }

  // Pr(target | histories whose j-key at subjective time s equals k)
  Rational posterior(int j, std::int64_t k, std::int64_t s) {
    auto memo = posterior_memo_[j].find(k);
    if (memo != posterior_memo_[j].end()) return memo->second;
    Rational num = 0, den = 0;
    for (std::size_t h = 0; h < hist_.size(); ++h) {
      if (key(j, h, hist_[h].z[j] + static_cast<std::size_t>(s)) != k) continue;
      den += weight_[h];
      if (target_[hist_[h].o]) num += weight_[h];
    }
    Rational q = num / den;
    posterior_memo_[j].emplace(k, q);
    return q;
  }

  const BdtfSpec& spec_;
  std::vector<BdtfHistory> hist_;
  std::array<std::vector<std::vector<std::int64_t>>, 2> key_memo_;
  std::array<std::vector<std::vector<std::int64_t>>, 2> sent_memo_;
  std::array<std::map<std::tuple<int, std::int64_t, std::int64_t>, std::int64_t>, 2> key_ids_;
  std::array<std::map<std::tuple<std::int64_t, std::int64_t, std::int64_t>, std::uint32_t>, 2> signal_ids_;
  std::array<std::vector<SignalInfo>, 2> signals_;
  std::map<Rational, std::int64_t> posterior_ids_;
  std::array<std::map<std::int64_t, Rational>, 2> posterior_memo_;
  std::vector<char> target_;
  std::vector<Rational> weight_;
};

void validate(const BdtfSpec& spec) {
  const std::size_t n_o = spec.initial_conditions.size();
  if (n_o == 0) throw PreconditionError("at least one initial condition is required");
  std::set<std::string> names(spec.initial_conditions.begin(), spec.initial_conditions.end());
  if (names.size() != n_o) throw PreconditionError("duplicate initial condition name");
  for (int i = 0; i < 2; ++i)
    if (spec.initial_partition[i].size() != n_o)
      throw PreconditionError("initial partition must label every initial condition");
  if (spec.horizon == 0) throw PreconditionError("horizon must be at least 1");
  if (spec.single_dimensional) {
    if (*spec.single_dimensional < 2) throw PreconditionError("single-dimensional round trip must be at least 2");
  } else if (spec.d_max == 0) {
    throw PreconditionError("delay bound must be at least 1");
  }
  for (const auto& t : spec.posterior_target)
    if (!names.count(t)) throw PreconditionError("unknown posterior target '" + t + "'");
  if (!spec.prior.empty()) {
    if (spec.prior.size() != n_o) throw PreconditionError("prior must weight every initial condition");
    Rational sum = 0;
    for (const auto& w : spec.prior) {
      if (w <= 0) throw PreconditionError("prior weights must be positive");
      sum += w;
    }
    if (sum != 1) throw PreconditionError("prior weights must sum to 1");
  }
}

std::vector<BdtfHistory> enumerate(const BdtfSpec& spec) {
  const std::size_t n_o = spec.initial_conditions.size();
  const std::size_t per_o = timing_combinations(spec);
  if (per_o == 0 || n_o * per_o > spec.history_cap)
    throw CapExceeded("spec has " + std::to_string(n_o * per_o) + " histories, cap is " +
                      std::to_string(spec.history_cap));
  std::vector<BdtfHistory> out;
  for (std::size_t o = 0; o < n_o; ++o) {
    if (spec.single_dimensional) {
      const std::size_t D = *spec.single_dimensional;
      for (std::size_t db = 1; db < D; ++db) out.push_back(BdtfHistory{o, {0, db}, {D - db, db}});
    } else {
      for (std::size_t za = 0; za <= spec.z_max; ++za)
        for (std::size_t zb = 0; zb <= spec.z_max; ++zb)
          for (std::size_t da = 1; da <= spec.d_max; ++da)
            for (std::size_t db = 1; db <= spec.d_max; ++db) out.push_back(BdtfHistory{o, {za, zb}, {da, db}});
    }
  }
  return out;
}

// A: later-born (alpha on ties); the round trip A -> B -> A -> B ends at z_A + d_A + 2 d_B
std::size_t roundtrip_end(const BdtfHistory& w) {
  const int a = w.z[0] >= w.z[1] ? 0 : 1;
  const int b = 1 - a;
  return w.z[a] + w.d[a] + 2 * w.d[b];
}

}  // namespace

BdtfFrame build_bdtf_frame(const BdtfSpec& spec) {
  validate(spec);
  auto hist = enumerate(spec);
  const std::size_t H = spec.horizon;
  if (spec.timestamps)
    for (const auto& w : hist)
      if (roundtrip_end(w) + spec.margin >= H)
        throw HorizonInadequate("horizon " + std::to_string(H) + " too short for the round trip of history '" +
                                history_label(spec, w) + "' (needs more than " +
                                std::to_string(roundtrip_end(w) + spec.margin) + ")");

  Builder b(spec, hist);
  const std::size_t n = hist.size();
  std::array<std::vector<std::int64_t>, 2> labels;
  BdtfFrame out;
  for (int i = 0; i < 2; ++i) {
    labels[i].resize(n * H);
    out.received_[i].resize(n * H);
  }
  // absolute-time order keeps the key recursion shallow
  for (std::size_t t = 0; t < H; ++t)
    for (std::size_t h = 0; h < n; ++h)
      for (int i = 0; i < 2; ++i) {
        labels[i][h * H + t] = b.key(i, h, t);
        out.received_[i][h * H + t] = b.received(i, h, t);
      }

  std::vector<std::string> names;
  for (const auto& w : hist) names.push_back(history_label(spec, w));
  out.frame = make_frame(std::move(names), H, {"alpha", "beta"}, {labels[0], labels[1]});
  out.spec = spec;
  out.histories = std::move(hist);
  out.signals_ = std::move(b.signals());
  return out;
}

NoNewCkReport verify_no_new_ck(const BdtfFrame& bf, HistoryId w, const Event& phi) {
  if (phi.frame_ptr() != bf.frame) throw FrameMismatch();
  const BdtfHistory& h = bf.history(w);
  if (h.d[0] + h.d[1] <= 2)
    throw HypothesisViolation("round-trip delay of history '" + bf.frame->history_name(w) + "' is at most 2");
  const std::vector<PlayerId> group{kAlpha, kBeta};
  const Event c = ck_traditional(group, phi);
  NoNewCkReport r;
  const std::size_t H = bf.frame->horizon();
  r.ck_at_zero = c.contains(Point{w, 0});
  for (std::size_t t = 0; t + 1 < H; ++t)
    if (!c.contains(Point{w, t}) && c.contains(Point{w, t + 1})) {
      r.first_violation = t;
      break;
    }
  return r;
}

Profile RoundTrip::profile() const {
  std::vector<std::pair<PlayerId, Event>> anchors{{a_role, psi_a}, {b_role, psi_b}};
  return Profile(psi_a.frame_ptr(), std::move(anchors));
}

RoundTrip roundtrip_ck_facts(const BdtfFrame& bf, HistoryId w) {
  if (!bf.spec.timestamps) throw PreconditionError("round-trip analysis requires timestamped signals");
  const BdtfHistory& h = bf.history(w);
  const int a = h.z[0] >= h.z[1] ? 0 : 1;
  const int b = 1 - a;
  const auto za = static_cast<std::int64_t>(h.z[a]), zb = static_cast<std::int64_t>(h.z[b]);
  const auto da = static_cast<std::int64_t>(h.d[a]), db = static_cast<std::int64_t>(h.d[b]);
  const std::int64_t t1 = za - zb + db;
  const std::int64_t t2 = da + db;
  const std::int64_t t3 = t1 + t2;
  const std::int64_t Z = std::max(t1, t2 - t1);
  const auto H = static_cast<std::int64_t>(bf.frame->horizon());

  const std::size_t n = bf.histories.size();
  HistorySet phi_h(n), sd(n), sz(n);
  for (std::size_t k = 0; k < n; ++k) {
    const BdtfHistory& x = bf.histories[k];
    const auto xa = static_cast<std::int64_t>(x.z[a]), xb = static_cast<std::int64_t>(x.z[b]);
    const auto xda = static_cast<std::int64_t>(x.d[a]), xdb = static_cast<std::int64_t>(x.d[b]);
    phi_h[k] = xa - xb + xdb == t1 && xb - xa + xda == t2 - t1;
    sd[k] = xda + xdb == t2;
    sz[k] = std::abs(xa - xb) < Z;
    if (phi_h[k] && (xa + t2 >= H || xb + t3 >= H))
      throw HorizonInadequate("horizon too short for the round trip of history '" +
                              bf.frame->history_name(HistoryId{k}) + "'");
  }
  const PlayerId A{static_cast<std::size_t>(a)}, B{static_cast<std::size_t>(b)};
  RoundTrip r{w,
              A,
              B,
              static_cast<std::size_t>(t1),
              static_cast<std::size_t>(t2),
              static_cast<std::size_t>(t3),
              static_cast<std::size_t>(Z),
              bf.subjective_time_event(A, t2),
              bf.subjective_time_event(B, t3),
              Event::cylinder(bf.frame, phi_h),
              Event::cylinder(bf.frame, sd),
              Event::cylinder(bf.frame, sz)};
  const Profile p = r.profile();
  r.induction_premise = r.phi.subset_of(everyone_at(p, r.phi));
  r.sigma_d_ck = ck_at(p, r.sigma_d).contains(Point{w, 0});
  r.sigma_z_ck = ck_at(p, r.sigma_z).contains(Point{w, 0});
  return r;
}

SlicePartition slice_partition(PlayerId i, const Event& xi, const std::optional<HistorySet>& domain) {
  const Frame& f = xi.frame();
  f.require_player(i);
  if (!is_singular(xi)) throw PreconditionError("slice anchor must be singular");
  if (!is_local(i, xi)) throw PreconditionError("slice anchor must be local to the player");
  HistorySet dom(f.history_count());
  if (domain) dom = *domain;
  else dom.set();
  const HistorySet occ = histories_of(xi);
  if (!dom.is_subset_of(occ)) throw PreconditionError("slice anchor must occur in every history of the domain");
  std::vector<std::size_t> labels(f.history_count(), HistoryPartition::outside);
  for (std::size_t h = 0; h < labels.size(); ++h)
    if (dom.test(h)) labels[h] = f.ken_of(i, Point{HistoryId{h}, first_time(xi, HistoryId{h})});
  return SlicePartition{i, xi, HistoryPartition(labels)};
}

GetCkTimes getck_times(const BdtfFrame& bf, HistoryId w) {
  RoundTrip rt = roundtrip_ck_facts(bf, w);
  const PlayerId A = rt.a_role, B = rt.b_role;
  const auto H = static_cast<std::int64_t>(bf.frame->horizon());
  const HistoryPartition comps = reachability_components(rt.profile());
  const HistorySet cell = comps.cell_members(comps.cell_of(w));

  std::int64_t ell_max = H;
  for (auto h = cell.find_first(); h != HistorySet::npos; h = cell.find_next(h)) {
    const BdtfHistory& x = bf.histories[h];
    ell_max = std::min({ell_max, H - 1 - static_cast<std::int64_t>(x.z[A.index] + rt.t2),
                        H - 1 - static_cast<std::int64_t>(x.z[B.index] + rt.t3)});
  }
  if (ell_max < 0) throw HorizonInadequate("round-trip anchors fall outside the horizon");

  using Pair = std::pair<HistoryPartition, HistoryPartition>;
  std::vector<Pair> seq;
  for (std::int64_t l = 0; l <= ell_max; ++l)
    seq.emplace_back(slice_partition(A, bf.subjective_time_event(A, static_cast<std::int64_t>(rt.t2) + l), cell).cells,
                     slice_partition(B, bf.subjective_time_event(B, static_cast<std::int64_t>(rt.t3) + l), cell).cells);
  std::int64_t ell_prime = ell_max;
  while (ell_prime > 0 && seq[static_cast<std::size_t>(ell_prime - 1)] == seq.back()) --ell_prime;
  if (ell_max - ell_prime < static_cast<std::int64_t>(bf.spec.margin))
    throw StabilizationNotReached("slice partitions of history '" + bf.frame->history_name(w) +
                                  "' still refine within " + std::to_string(bf.spec.margin) +
                                  " periods of the horizon");

  std::array<std::size_t, 2> t_hat{};
  t_hat[A.index] = rt.t2 + static_cast<std::size_t>(ell_prime);
  t_hat[B.index] = rt.t3 + static_cast<std::size_t>(ell_prime);
  std::array<std::size_t, 2> window_end{};
  window_end[A.index] = rt.t2 + static_cast<std::size_t>(ell_max);
  window_end[B.index] = rt.t3 + static_cast<std::size_t>(ell_max);

  // received signals of both players in their stable windows, compared with w's
  const std::size_t n = bf.histories.size();
  HistorySet same(n);
  for (std::size_t h = 0; h < n; ++h) {
    bool ok = true;
    for (PlayerId i : {kAlpha, kBeta}) {
      for (std::size_t s = t_hat[i.index] + 1; s <= window_end[i.index] && ok; ++s) {
        const std::size_t th = bf.histories[h].z[i.index] + s, tw = bf.history(w).z[i.index] + s;
        if (th >= static_cast<std::size_t>(H) || tw >= static_cast<std::size_t>(H)) {
          ok = false;
          break;
        }
        ok = bf.received(i, Point{HistoryId{h}, th}) == bf.received(i, Point{w, tw});
      }
    }
    same[h] = ok;
  }
  Event future = Event::cylinder(bf.frame, same);
  Profile anchors(bf.frame, {{kAlpha, bf.subjective_time_event(kAlpha, static_cast<std::int64_t>(t_hat[0]))},
                             {kBeta, bf.subjective_time_event(kBeta, static_cast<std::int64_t>(t_hat[1]))}});
  const bool verified = ck_at(anchors, future).contains(Point{w, 0});
  return GetCkTimes{std::move(rt),
                    cell,
                    static_cast<std::size_t>(ell_prime),
                    static_cast<std::size_t>(ell_max),
                    t_hat,
                    std::move(anchors),
                    std::move(future),
                    verified};
}

}  // namespace rck
