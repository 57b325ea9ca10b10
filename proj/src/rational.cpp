#include "robustmatch/rational.hpp"

#include <cctype>
#include <string>

#include "robustmatch/error.hpp"

namespace robustmatch {

Rational make_rational(long num, long den) {
  if (den == 0) throw InputError("zero denominator");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

std::string to_decimal_string(const Rational& q, int digits) {
  mpf_class f(q, 256);
  // gmp's stream output honours precision in significant digits; fixed
  // notation is what people expect to read.
  mp_exp_t exp = 0;
  std::string mant = f.get_str(exp, 10, 0);
  if (mant.empty()) return "0";
  bool negative = mant[0] == '-';
  if (negative) mant.erase(0, 1);
  std::string int_part, frac_part;
  if (exp <= 0) {
    int_part = "0";
    frac_part = std::string(static_cast<size_t>(-exp), '0') + mant;
  } else if (static_cast<size_t>(exp) >= mant.size()) {
    int_part = mant + std::string(static_cast<size_t>(exp) - mant.size(), '0');
  } else {
    int_part = mant.substr(0, static_cast<size_t>(exp));
    frac_part = mant.substr(static_cast<size_t>(exp));
  }
  if (frac_part.size() > static_cast<size_t>(digits)) frac_part.resize(static_cast<size_t>(digits));
  while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();
  std::string out = negative ? "-" : "";
  out += int_part;
  if (!frac_part.empty()) out += "." + frac_part;
  return out;
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
    negative = body[0] == '-';
    body.remove_prefix(1);
  }
  Rational result;
  if (auto slash = body.find('/'); slash != std::string_view::npos) {
    auto num = body.substr(0, slash);
    auto den = body.substr(slash + 1);
    if (!all_digits(num) || !all_digits(den)) throw InputError("malformed rational: " + std::string(text));
    Integer d(std::string(den), 10);
    if (d == 0) throw InputError("zero denominator: " + std::string(text));
    result = Rational(Integer(std::string(num), 10), d);
  } else if (auto dot = body.find('.'); dot != std::string_view::npos) {
    auto whole = body.substr(0, dot);
    auto frac = body.substr(dot + 1);
    if ((!whole.empty() && !all_digits(whole)) || (!frac.empty() && !all_digits(frac)) ||
        (whole.empty() && frac.empty()))
      throw InputError("malformed decimal: " + std::string(text));
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    Integer digits(std::string(whole.empty() ? "0" : whole) + std::string(frac), 10);
    result = Rational(digits, scale);
  } else {
    if (!all_digits(body)) throw InputError("malformed rational: " + std::string(text));
    result = Rational(Integer(std::string(body), 10));
  }
  result.canonicalize();
  return negative ? Rational(-result) : result;
}

}  // namespace robustmatch
