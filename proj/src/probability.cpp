#include "rck/probability.hpp"

#include <algorithm>

#include "rck/errors.hpp"
#include "rck/kernel.hpp"
#include "rck/relaxed_ck.hpp"

namespace rck {

ProbFrame::ProbFrame(FramePtr frame, std::vector<Rational> weights)
    : frame_(std::move(frame)), weights_(std::move(weights)) {
  if (!frame_) throw PreconditionError("probability frame needs a frame");
  if (weights_.size() != frame_->history_count()) throw PreconditionError("one weight per history is required");
  Rational sum = 0;
  for (const auto& w : weights_) {
    if (w <= 0) throw PreconditionError("history weights must be strictly positive");
    sum += w;
  }
  if (sum != 1) throw PreconditionError("history weights must sum to 1, got " + to_string(sum));
}

Rational ProbFrame::probability(const HistorySet& histories) const {
  Rational p = 0;
  for (auto h = histories.find_first(); h != HistorySet::npos; h = histories.find_next(h)) p += weights_[h];
  return p;
}

namespace {

void require_time_invariant(const Event& phi) {
  if (!is_time_invariant(phi)) throw PreconditionError("posterior target must be time-invariant");
}

bool ken_singular(const Frame& f, PlayerId i, KenId k) {
  const std::size_t H = f.horizon();
  auto m = f.ken_members(i, k);
  for (std::size_t x = 1; x < m.size(); ++x)
    if (m[x] / H == m[x - 1] / H) return false;
  return true;
}

Rational ken_posterior(const ProbFrame& pf, PlayerId i, KenId k, const Bits& phi) {
  const Frame& f = pf.frame();
  const std::size_t H = f.horizon();
  Rational num = 0, den = 0;
  for (auto p : f.ken_members(i, k)) {
    const Rational& w = pf.weights()[p / H];
    den += w;
    if (phi.test(p)) num += w;
  }
  return num / den;
}

}  // namespace

Rational posterior(const ProbFrame& pf, PlayerId i, const Event& phi, Point at) {
  if (phi.frame_ptr() != pf.frame_ptr()) throw FrameMismatch();
  pf.frame().require_player(i);
  require_time_invariant(phi);
  if (!pf.frame().valid(at)) throw PreconditionError("point outside the frame");
  const KenId k = pf.frame().ken_of(i, at);
  if (!ken_singular(pf.frame(), i, k)) throw PreconditionError("posterior is only defined on singular kens");
  return ken_posterior(pf, i, k, phi.bits());
}

PosteriorEvent posterior_event(const ProbFrame& pf, PlayerId i, const Event& phi, const Rational& q) {
  if (phi.frame_ptr() != pf.frame_ptr()) throw FrameMismatch();
  const Frame& f = pf.frame();
  f.require_player(i);
  require_time_invariant(phi);
  PosteriorEvent out{Event(pf.frame_ptr()), {}};
  Bits bits(f.point_count());
  for (KenId k = 0; k < f.ken_count(i); ++k) {
    auto m = f.ken_members(i, k);
    if (!ken_singular(f, i, k)) {
      out.excluded.push_back(f.point_at(m.front()));
      continue;
    }
    if (ken_posterior(pf, i, k, phi.bits()) == q)
      for (auto p : m) bits.set(p);
  }
  out.event = Event(pf.frame_ptr(), std::move(bits));
  if (!is_local(i, out.event)) throw InvariantViolation("posterior event is not local");
  return out;
}

AgreementReport verify_agreement(const ProbFrame& pf, const Profile& profile, const Event& phi,
                                 const Rational& q_alpha, const Rational& q_beta) {
  if (profile.frame_ptr() != pf.frame_ptr()) throw FrameMismatch();
  if (profile.size() != 2) throw PreconditionError("agreement needs a two-player profile");
  for (std::size_t k = 0; k < 2; ++k)
    if (!is_singular(profile.anchor_at(k))) throw PreconditionError("agreement anchors must be singular");
  require_time_invariant(phi);
  const PlayerId a = profile.players()[0], b = profile.players()[1];
  const Event fa = diamond(profile.anchor(a) & posterior_event(pf, a, phi, q_alpha).event);
  const Event fb = diamond(profile.anchor(b) & posterior_event(pf, b, phi, q_beta).event);
  AgreementReport r{fa & fb, Event(pf.frame_ptr()), false, q_alpha == q_beta};
  r.ck = ck_at(profile, r.fact);
  r.ck_nonempty = !r.ck.is_empty();
  return r;
}

ProbFrame bdtf_prob_frame(const BdtfFrame& bf) {
  const std::size_t n_o = bf.spec.initial_conditions.size();
  std::vector<Rational> prior = bf.spec.prior;
  if (prior.empty()) prior.assign(n_o, Rational(1, static_cast<long>(n_o)));
  const Rational per = Rational(1, static_cast<long>(timing_combinations(bf.spec)));
  std::vector<Rational> w;
  for (const auto& h : bf.histories) w.push_back(prior[h.o] * per);
  return ProbFrame(bf.frame, std::move(w));
}

Event posterior_target_event(const BdtfFrame& bf) {
  HistorySet hs(bf.histories.size());
  for (std::size_t h = 0; h < bf.histories.size(); ++h) {
    const auto& name = bf.spec.initial_conditions[bf.histories[h].o];
    hs[h] = std::find(bf.spec.posterior_target.begin(), bf.spec.posterior_target.end(), name) !=
            bf.spec.posterior_target.end();
  }
  return Event::cylinder(bf.frame, hs);
}

Gp82Result gp82_dialogue(const BdtfSpec& spec) {
  if (!spec.timestamps) throw PreconditionError("the posterior dialogue needs timestamped signals");
  if (spec.signals[0] != SignalRule::posterior || spec.signals[1] != SignalRule::posterior)
    throw PreconditionError("the posterior dialogue needs posterior signals for both players");
  Gp82Result out{build_bdtf_frame(spec), {}, true};
  const BdtfFrame& bf = out.bdtf;
  const ProbFrame pf = bdtf_prob_frame(bf);
  const Event phi = posterior_target_event(bf);
  const std::vector<PlayerId> group{kAlpha, kBeta};
  const std::size_t H = bf.frame->horizon();

  for (std::size_t h = 0; h < bf.histories.size(); ++h) {
    const HistoryId w{h};
    const GetCkTimes g = getck_times(bf, w);
    Gp82Row row;
    row.history = w;
    row.t_hat = g.t_hat;
    for (PlayerId i : group) {
      const Event& anchor = g.anchors.anchor(i);
      if (histories_of(anchor).count() != bf.histories.size())
        throw HorizonInadequate("posterior anchors must occur in every history");
      row.q[i.index] = posterior(pf, i, phi, Point{w, bf.history(w).z[i.index] + g.t_hat[i.index]});
    }
    const AgreementReport rep = verify_agreement(pf, g.anchors, phi, row.q[0], row.q[1]);
    row.ck_nonempty = rep.ck.contains(Point{w, 0});
    row.equal = rep.equal;
    const Event trad = ck_traditional(group, rep.fact);
    row.traditional_empty_after_zero = true;
    for (auto p = trad.bits().find_first(); p != Bits::npos; p = trad.bits().find_next(p))
      if (p % H >= 1) row.traditional_empty_after_zero = false;
    for (std::size_t t = 0; t < H; ++t)
      for (PlayerId i : group) {
        const std::uint32_t id = bf.received(i, Point{w, t});
        if (id == 0) continue;
        row.transcript.push_back(bf.frame->player_name(other(i)) + " " + bf.signal_text(other(i), id));
      }
    out.verdict = out.verdict && row.ck_nonempty && row.equal && row.traditional_empty_after_zero;
    out.rows.push_back(std::move(row));
  }
  return out;
}

}  // namespace rck
