#include "forcing/coding/fn_rep.hpp"

#include <algorithm>

#include "forcing/error.hpp"

namespace forcing::coding {

FnRep::FnRep(std::vector<Natural> table, Tail tail, Natural param)
    : table_(std::move(table)), tail_(tail), param_(std::move(param)) {
  while (!table_.empty() && table_.back() == tail_value(table_.size() - 1)) table_.pop_back();
}

Natural FnRep::tail_value(std::size_t i) const {
  return tail_ == Tail::Constant ? param_ : Natural(i) + param_;
}

Natural FnRep::operator()(std::size_t i) const {
  return i < table_.size() ? table_[i] : tail_value(i);
}

FinSeq FnRep::restrict(std::size_t n) const {
  FinSeq out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) out.push_back((*this)(i));
  return out;
}

std::string FnRep::to_text() const {
  std::string out;
  for (std::size_t i = 0; i < table_.size(); ++i) {
    if (i) out += ',';
    out += table_[i].str();
  }
  out += tail_ == Tail::Constant ? ";const:" : ";id+";
  out += param_.str();
  return out;
}

FnRep FnRep::parse(std::string_view text) {
  const std::size_t semi = text.find(';');
  if (semi == std::string_view::npos) throw ParseError(text.size(), "expected ';' before tail rule");
  std::vector<Natural> table;
  if (semi > 0) {
    std::size_t start = 0;
    while (start <= semi) {
      std::size_t comma = text.find(',', start);
      if (comma == std::string_view::npos || comma > semi) comma = semi;
      const auto token = text.substr(start, comma - start);
      try {
        table.push_back(parse_natural(token));
      } catch (const ParseError& e) {
        throw ParseError(start + e.position(), "invalid table entry '" + std::string(token) + "'");
      }
      start = comma + 1;
    }
  }
  const std::string_view rule = text.substr(semi + 1);
  const std::size_t rule_at = semi + 1;
  auto param_at = [&](std::size_t skip) {
    try {
      return parse_natural(rule.substr(skip));
    } catch (const ParseError& e) {
      throw ParseError(rule_at + skip + e.position(), "invalid tail parameter");
    }
  };
  if (rule.starts_with("const:")) return FnRep(std::move(table), Tail::Constant, param_at(6));
  if (rule.starts_with("id+")) return FnRep(std::move(table), Tail::Shift, param_at(3));
  throw ParseError(rule_at, "unknown tail rule (expected const:c or id+k)");
}

std::optional<std::size_t> first_difference(const FnRep& a, const FnRep& b) {
  // Past both tables the tails agree everywhere, nowhere, or at one point,
  // so two positions beyond the tables settle the question.
  const std::size_t horizon = std::max(a.table().size(), b.table().size());
  for (std::size_t i = 0; i < horizon + 2; ++i) {
    if (a(i) != b(i)) return i;
  }
  return std::nullopt;
}

bool eventually_different(const FnRep& a, const FnRep& b) {
  if (a.tail() != b.tail()) return true;
  return a.tail_param() != b.tail_param();
}

bool dominates(const FnRep& a, const FnRep& b) {
  const std::size_t horizon = std::max(a.table().size(), b.table().size());
  for (std::size_t i = 0; i < horizon; ++i) {
    if (a(i) < b(i)) return false;
  }
  using Tail = FnRep::Tail;
  if (a.tail() == Tail::Constant && b.tail() == Tail::Constant) return a.tail_param() >= b.tail_param();
  if (a.tail() == Tail::Shift && b.tail() == Tail::Shift) return a.tail_param() >= b.tail_param();
  if (a.tail() == Tail::Shift) return Natural(horizon) + a.tail_param() >= b.tail_param();
  return false;  // a constant never dominates an unbounded tail
}

}  // namespace forcing::coding
