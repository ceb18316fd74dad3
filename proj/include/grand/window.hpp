#pragma once

#include <cstddef>
#include <vector>

#include "grand/measure.hpp"

namespace grand {

/// A set of atom positions of a measure space together with its measure.
/// Member order is preserved by translation, so the atoms of Q + x are
/// visited in the order of Q's members.
class Window {
 public:
  /// Nonempty set of distinct in-range positions.
  static Window make(const MeasureSpace& space, std::vector<std::size_t> members);
  /// Positions start, start + 1, ... (size of them) under the space's translation rule.
  static Window contiguous(const MeasureSpace& space, std::size_t start, std::size_t size);
  static Window whole(const MeasureSpace& space);

  const std::vector<std::size_t>& members() const& { return members_; }
  // Lets `for (auto m : translate_window(...).members())` own its storage.
  std::vector<std::size_t> members() && { return std::move(members_); }
  double mass() const { return mass_; }
  bool empty() const { return members_.empty(); }
  std::size_t size() const { return members_.size(); }
  bool contains(std::size_t position) const;

 private:
  friend Window translate_window(const Window&, std::size_t, const MeasureSpace&);
  Window(std::vector<std::size_t> members, double mass)
      : members_(std::move(members)), mass_(mass) {}

  std::vector<std::size_t> members_;
  double mass_ = 0.0;
};

/// Q + x. Interval spaces clip, so the result may be empty near the
/// boundary; cyclic spaces wrap.
Window translate_window(const Window& q, std::size_t x, const MeasureSpace& space);

/// Characteristic function of a window.
SampledFunction indicator(const SpacePtr& space, const Window& w);

}  // namespace grand
