#include "rck/event.hpp"

#include "rck/errors.hpp"

namespace rck {

Event::Event(FramePtr frame) : frame_(std::move(frame)) {
  if (!frame_) throw PreconditionError("event needs a frame");
  bits_.resize(frame_->point_count());
}

Event::Event(FramePtr frame, Bits bits) : frame_(std::move(frame)), bits_(std::move(bits)) {
  if (!frame_) throw PreconditionError("event needs a frame");
  if (bits_.size() != frame_->point_count()) throw PreconditionError("event bitset size does not match frame");
}

Event Event::all(FramePtr frame) {
  Event e(std::move(frame));
  e.bits_.set();
  return e;
}

Event Event::of_points(FramePtr frame, std::span<const Point> points) {
  Event e(std::move(frame));
  for (Point p : points) {
    if (!e.frame_->valid(p))
      throw PreconditionError("point (" + std::to_string(p.history.index) + "," + std::to_string(p.time) +
                              ") is outside the frame");
    e.bits_.set(e.frame_->index_of(p));
  }
  return e;
}

Event Event::cylinder(FramePtr frame, const HistorySet& histories) {
  Event e(std::move(frame));
  const std::size_t H = e.frame_->horizon();
  if (histories.size() != e.frame_->history_count()) throw PreconditionError("history set size does not match frame");
  for (auto h = histories.find_first(); h != HistorySet::npos; h = histories.find_next(h))
    for (std::size_t t = 0; t < H; ++t) e.bits_.set(h * H + t);
  return e;
}

std::vector<Point> Event::points() const {
  std::vector<Point> out;
  out.reserve(size());
  for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i)) out.push_back(frame_->point_at(i));
  return out;
}

void Event::require_same_frame(const Event& other) const {
  if (frame_ != other.frame_) throw FrameMismatch();
}

bool Event::subset_of(const Event& other) const {
  require_same_frame(other);
  return bits_.is_subset_of(other.bits_);
}

Event Event::complement() const { return Event(frame_, ~bits_); }

Event operator&(const Event& a, const Event& b) {
  a.require_same_frame(b);
  return Event(a.frame_, a.bits_ & b.bits_);
}

Event operator|(const Event& a, const Event& b) {
  a.require_same_frame(b);
  return Event(a.frame_, a.bits_ | b.bits_);
}

Event operator-(const Event& a, const Event& b) {
  a.require_same_frame(b);
  return Event(a.frame_, a.bits_ - b.bits_);
}

bool operator==(const Event& a, const Event& b) {
  if (a.bits_ != b.bits_) return false;
  return a.frame_ == b.frame_ || *a.frame_ == *b.frame_;
}

Event implies(const Event& psi, const Event& phi) { return (psi - phi).complement(); }

Event event_algebra(EventOp op, std::span<const Event> operands) {
  auto arity = [&](std::size_t n) {
    if (operands.size() != n)
      throw PreconditionError("operator expects " + std::to_string(n) + " operand(s), got " +
                              std::to_string(operands.size()));
  };
  switch (op) {
    case EventOp::complement:
      arity(1);
      return operands[0].complement();
    case EventOp::implies:
      arity(2);
      return implies(operands[0], operands[1]);
    case EventOp::difference:
      arity(2);
      return operands[0] - operands[1];
    case EventOp::intersect:
    case EventOp::unite: {
      if (operands.empty()) throw PreconditionError("operator expects at least one operand");
      Event acc = operands[0];
      for (std::size_t k = 1; k < operands.size(); ++k)
        acc = op == EventOp::intersect ? (acc & operands[k]) : (acc | operands[k]);
      return acc;
    }
  }
  throw PreconditionError("unknown event operator");
}

}  // namespace rck
