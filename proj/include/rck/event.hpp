#ifndef RCK_EVENT_HPP
#define RCK_EVENT_HPP

#include <initializer_list>
#include <span>
#include <vector>

#include "rck/frame.hpp"

namespace rck {

/// A set of points of one frame. Immutable value type; combining events bound
/// to different frame objects throws FrameMismatch.
class Event {
 public:
  explicit Event(FramePtr frame);
  Event(FramePtr frame, Bits bits);

  static Event empty(FramePtr frame) { return Event(std::move(frame)); }
  static Event all(FramePtr frame);
  static Event of_points(FramePtr frame, std::span<const Point> points);
  static Event of_points(FramePtr frame, std::initializer_list<Point> points) {
    return of_points(std::move(frame), std::span<const Point>(points.begin(), points.size()));
  }
  /// All points of the given histories (a time-invariant event).
  static Event cylinder(FramePtr frame, const HistorySet& histories);

  const Frame& frame() const { return *frame_; }
  const FramePtr& frame_ptr() const { return frame_; }
  const Bits& bits() const { return bits_; }

  bool contains(Point p) const { return frame_->valid(p) && bits_.test(frame_->index_of(p)); }
  bool contains_index(std::size_t i) const { return bits_.test(i); }
  std::size_t size() const { return bits_.count(); }
  bool is_empty() const { return bits_.none(); }
  bool is_all() const { return bits_.all(); }
  std::vector<Point> points() const;

  bool subset_of(const Event& other) const;
  bool same_frame(const Event& other) const { return frame_ == other.frame_; }
  void require_same_frame(const Event& other) const;

  Event complement() const;
  friend Event operator&(const Event& a, const Event& b);
  friend Event operator|(const Event& a, const Event& b);
  /// Set difference a \ b.
  friend Event operator-(const Event& a, const Event& b);

  /// Equal point sets over equal frames.
  friend bool operator==(const Event& a, const Event& b);

 private:
  FramePtr frame_;
  Bits bits_;
};

/// (psi -> phi) = not(psi \ phi).
Event implies(const Event& psi, const Event& phi);

enum class EventOp { complement, implies, intersect, unite, difference };

/// Generic entry point used by the scenario driver. complement takes one
/// operand, implies and difference two, intersect and unite at least one.
Event event_algebra(EventOp op, std::span<const Event> operands);

}  // namespace rck

#endif  // RCK_EVENT_HPP
