#include "hpv/rational.hpp"

#include <algorithm>
#include <cctype>

namespace hpv {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  return !s.empty() &&
         std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

std::optional<BigInt> parse_integer(std::string_view s) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) return std::nullopt;
  BigInt v(std::string(s));
  return neg ? -v : v;
}

}  // namespace

std::optional<Rat> parse_rational(std::string_view text) {
  std::string_view s = trim(text);
  if (s.empty()) return std::nullopt;

  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    auto num = parse_integer(trim(s.substr(0, slash)));
    auto den = parse_integer(trim(s.substr(slash + 1)));
    if (!num || !den || *den == 0) return std::nullopt;
    return Rat(*num, *den);
  }

  if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view head = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (!all_digits(frac)) return std::nullopt;
    bool neg = false;
    if (!head.empty() && (head.front() == '-' || head.front() == '+')) {
      neg = head.front() == '-';
      head.remove_prefix(1);
    }
    if (head.empty() && frac.empty()) return std::nullopt;
    BigInt whole = head.empty() ? BigInt(0) : BigInt(std::string(head));
    if (!head.empty() && !all_digits(head)) return std::nullopt;
    BigInt scale = 1;
    BigInt digits = 0;
    for (char c : frac) {
      scale *= 10;
      digits = digits * 10 + (c - '0');
    }
    Rat v = Rat(whole) + Rat(digits, scale);
    return neg ? -v : v;
  }

  auto i = parse_integer(s);
  if (!i) return std::nullopt;
  return Rat(*i);
}

std::string format_rational(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

}  // namespace hpv
