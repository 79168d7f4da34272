#ifndef RCK_PROBABILITY_HPP
#define RCK_PROBABILITY_HPP

#include <array>
#include <string>
#include <vector>

#include "rck/bdtf.hpp"
#include "rck/profile.hpp"
#include "rck/rational.hpp"

namespace rck {

/// A frame with a strictly positive exact weight per history, summing to 1.
class ProbFrame {
 public:
  ProbFrame(FramePtr frame, std::vector<Rational> weights);

  const FramePtr& frame_ptr() const { return frame_; }
  const Frame& frame() const { return *frame_; }
  const Rational& weight(HistoryId h) const { return weights_.at(h.index); }
  const std::vector<Rational>& weights() const { return weights_; }
  Rational probability(const HistorySet& histories) const;

  friend bool operator==(const ProbFrame& a, const ProbFrame& b) {
    return (a.frame_ == b.frame_ || *a.frame_ == *b.frame_) && a.weights_ == b.weights_;
  }

 private:
  FramePtr frame_;
  std::vector<Rational> weights_;
};

/// Pr(histories of phi | histories of the ken of i at `at`). The ken must be
/// singular and phi time-invariant.
Rational posterior(const ProbFrame& pf, PlayerId i, const Event& phi, Point at);

struct PosteriorEvent {
  Event event;  // [Pr_i(phi) = q]
  /// One representative point per non-singular ken left out of the event.
  std::vector<Point> excluded;
};

PosteriorEvent posterior_event(const ProbFrame& pf, PlayerId i, const Event& phi, const Rational& q);

struct AgreementReport {
  Event fact;  // [Pr_a(phi)=q_a]@psi_a & [Pr_b(phi)=q_b]@psi_b
  Event ck;
  bool ck_nonempty = false;
  bool equal = false;
};

/// Two-player profile of singular anchors; phi time-invariant.
AgreementReport verify_agreement(const ProbFrame& pf, const Profile& profile, const Event& phi,
                                 const Rational& q_alpha, const Rational& q_beta);

/// Weights prior(o) / (timing combinations) over the histories of a BDTF frame.
ProbFrame bdtf_prob_frame(const BdtfFrame& bf);
/// Histories whose initial condition is a posterior target.
Event posterior_target_event(const BdtfFrame& bf);

struct Gp82Row {
  HistoryId history;
  std::array<std::size_t, 2> t_hat{0, 0};
  std::array<Rational, 2> q;
  bool ck_nonempty = false;
  bool equal = false;
  bool traditional_empty_after_zero = false;
  /// Announcements (sender, subjective send time, posterior text) that arrive within the horizon.
  std::vector<std::string> transcript;
};

struct Gp82Result {
  BdtfFrame bdtf;
  std::vector<Gp82Row> rows;
  bool verdict = false;  // every row: equal, relaxed-CK, no traditional CK after t = 0
};

/// Builds the posterior-announcement frame and checks agreement at the
/// stabilization anchors of every history.
Gp82Result gp82_dialogue(const BdtfSpec& spec);

}  // namespace rck

#endif
