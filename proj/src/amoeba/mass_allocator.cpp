#include "mass_allocator.hpp"

namespace forcing::amoeba::detail {

namespace {

using cantor::BitString;

class Allocator {
 public:
  Allocator(DyadicRational amount, const Allocation& bounds)
      : remaining_(std::move(amount)), bounds_(bounds) {}

  // c must not end up completely filled.
  void free_region(const BitString& c) {
    if (done() || c.size() >= bounds_.max_level) return;
    if (++visited_ > bounds_.max_strings) {
      failed_ = true;
      return;
    }
    if (c.size() + 1 >= bounds_.min_level) {
      cell(c.child(0));
      free_region(c.child(1));
    } else {
      free_region(c.child(0));
      free_region(c.child(1));
    }
  }

  bool done() const { return failed_ || remaining_.is_zero(); }
  bool succeeded() const { return !failed_ && remaining_.is_zero(); }
  std::vector<BitString> take() { return std::move(out_); }

 private:
  // c may be filled completely.
  void cell(const BitString& c) {
    if (done()) return;
    if (c.size() < bounds_.min_level) {
      free_region(c);
      return;
    }
    if (c.size() > bounds_.max_level) return;
    const DyadicRational full = DyadicRational::pow2(-static_cast<std::int64_t>(c.size()));
    const DyadicRational take = remaining_ < full ? remaining_ : full;
    carve(c, take);
    remaining_ -= take;
  }

  // Exactly `amount` of [c] by binary expansion; amount <= 2^-|c|.
  void carve(const BitString& c, const DyadicRational& amount) {
    if (amount.is_zero() || failed_) return;
    const DyadicRational full = DyadicRational::pow2(-static_cast<std::int64_t>(c.size()));
    if (amount == full) {
      emit(c);
      return;
    }
    if (c.size() >= bounds_.max_level) {
      failed_ = true;  // amount is finer than the deepest allowed level
      return;
    }
    const DyadicRational half = full.scaled(-1);
    if (amount >= half) {
      emit(c.child(0));
      carve(c.child(1), amount - half);
    } else {
      carve(c.child(0), amount);
    }
  }

  void emit(const BitString& s) {
    if (out_.size() >= bounds_.max_strings) {
      failed_ = true;
      return;
    }
    out_.push_back(s);
  }

  DyadicRational remaining_;
  Allocation bounds_;
  std::vector<BitString> out_;
  std::size_t visited_ = 0;
  bool failed_ = false;
};

}  // namespace

std::optional<std::vector<cantor::BitString>> allocate_mass(const cantor::ClopenSet& current,
                                                            const cantor::BitString& within,
                                                            const DyadicRational& amount,
                                                            const Allocation& bounds) {
  if (amount.sign() < 0) return std::nullopt;
  if (amount.is_zero()) return std::vector<BitString>{};
  if (!amount.fits_grid(bounds.max_level)) return std::nullopt;
  const auto region = cantor::canonicalize({within});
  const auto free = cantor::intersect(cantor::complement(current), region);
  Allocator alloc(amount, bounds);
  for (const auto& g : free.members()) {
    alloc.free_region(g);
    if (alloc.done()) break;
  }
  if (!alloc.succeeded()) return std::nullopt;
  return alloc.take();
}

}  // namespace forcing::amoeba::detail
