#include "grand/window.hpp"

#include <algorithm>
#include <string>

namespace grand {

namespace {

double mass_of(const MeasureSpace& space, const std::vector<std::size_t>& members) {
  double m = 0.0;
  for (std::size_t pos : members) m += space.weight(pos);
  return m;
}

}  // namespace

Window Window::make(const MeasureSpace& space, std::vector<std::size_t> members) {
  if (members.empty()) throw DomainError("window must be nonempty");
  std::vector<std::size_t> sorted = members;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
    throw DomainError("window has repeated members");
  }
  if (sorted.back() >= space.size()) {
    throw DomainError("window member " + std::to_string(sorted.back()) + " outside the space");
  }
  const double mass = mass_of(space, members);
  return Window(std::move(members), mass);
}

Window Window::contiguous(const MeasureSpace& space, std::size_t start, std::size_t size) {
  if (size == 0) throw DomainError("window must be nonempty");
  if (size > space.size()) throw DomainError("window larger than the space");
  std::vector<std::size_t> members;
  for (std::size_t k = 0; k < size; ++k) {
    const auto pos = space.translate(start, k);
    if (!pos) throw DomainError("contiguous window runs off the interval");
    members.push_back(*pos);
  }
  return make(space, std::move(members));
}

Window Window::whole(const MeasureSpace& space) { return contiguous(space, 0, space.size()); }

bool Window::contains(std::size_t position) const {
  return std::find(members_.begin(), members_.end(), position) != members_.end();
}

Window translate_window(const Window& q, std::size_t x, const MeasureSpace& space) {
  std::vector<std::size_t> members;
  members.reserve(q.members().size());
  for (std::size_t m : q.members()) {
    if (const auto pos = space.translate(m, x)) members.push_back(*pos);
  }
  const double mass = mass_of(space, members);
  return Window(std::move(members), mass);
}

SampledFunction indicator(const SpacePtr& space, const Window& w) {
  std::vector<double> v(space->size(), 0.0);
  for (std::size_t m : w.members()) v[m] = 1.0;
  return SampledFunction(space, std::move(v));
}

}  // namespace grand
