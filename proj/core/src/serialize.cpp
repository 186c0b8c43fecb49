#include "lenseq/serialize.hpp"

#include <json.hpp>

#include <cctype>

#include "lenseq/errors.hpp"

namespace lenseq {

namespace {

using nlohmann::json;

std::string strip(const std::string& text) {
  std::string s;
  for (char c : text) {
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  }
  return s;
}

json parse_json(const std::string& text) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(ErrorCode::ParseError, "malformed json");
  return j;
}

Rational rational_field(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_string())
    fail(ErrorCode::ParseError, std::string("missing string field '") + key + "'");
  return parse_rational(j[key].get<std::string>());
}

}  // namespace

std::string format_seed(const Seed& seed) {
  return format_rational(seed.a) + "," + format_rational(seed.b) + "," +
         format_rational(seed.c);
}

Seed parse_seed(const std::string& text) {
  std::string s = strip(text);
  auto c1 = s.find(',');
  auto c2 = c1 == std::string::npos ? std::string::npos : s.find(',', c1 + 1);
  if (c2 == std::string::npos || s.find(',', c2 + 1) != std::string::npos)
    fail(ErrorCode::ParseError, "seed wants 'a,b,c', got '" + text + "'");
  return {parse_rational(s.substr(0, c1)), parse_rational(s.substr(c1 + 1, c2 - c1 - 1)),
          parse_rational(s.substr(c2 + 1))};
}

std::string format_symbol(const UndergroundSymbol& sym) {
  return "^" + format_rational(sym.s) + "(" + sym.p.get_str() + "," + sym.q.get_str() +
         ")^" + format_rational(sym.k);
}

UndergroundSymbol parse_symbol(const std::string& text) {
  std::string s = strip(text);
  auto bad = [&]() -> std::string { return "symbol wants '^s(p,q)^k', got '" + text + "'"; };
  if (s.empty() || s[0] != '^') fail(ErrorCode::ParseError, bad());
  auto open = s.find('(');
  auto comma = open == std::string::npos ? std::string::npos : s.find(',', open + 1);
  auto close = comma == std::string::npos ? std::string::npos : s.find(')', comma + 1);
  if (close == std::string::npos || close + 1 >= s.size() || s[close + 1] != '^')
    fail(ErrorCode::ParseError, bad());
  UndergroundSymbol sym;
  sym.s = parse_rational(s.substr(1, open - 1));
  sym.p = to_int(parse_rational(s.substr(open + 1, comma - open - 1)));
  sym.q = to_int(parse_rational(s.substr(comma + 1, close - comma - 1)));
  sym.k = parse_rational(s.substr(close + 2));
  return sym;
}

std::string format_label(const SeedLabel& label) {
  return "[" + format_rational(label.a) + "," + format_rational(label.b) + ";" +
         format_rational(label.k) + "]";
}

SeedLabel parse_label(const std::string& text) {
  std::string s = strip(text);
  auto bad = [&]() -> std::string { return "label wants '[a,b;k]', got '" + text + "'"; };
  if (s.size() < 7 || s.front() != '[' || s.back() != ']') fail(ErrorCode::ParseError, bad());
  auto comma = s.find(',');
  auto semi = comma == std::string::npos ? std::string::npos : s.find(';', comma + 1);
  if (semi == std::string::npos) fail(ErrorCode::ParseError, bad());
  return {parse_rational(s.substr(1, comma - 1)),
          parse_rational(s.substr(comma + 1, semi - comma - 1)),
          parse_rational(s.substr(semi + 1, s.size() - semi - 2))};
}

std::string window_to_json(const SequenceWindow& w, int indent) {
  json j;
  j["alpha"] = format_rational(w.constants().alpha);
  j["beta"] = format_rational(w.constants().beta);
  j["origin_index"] = w.origin_offset();
  json terms = json::array();
  for (const Rational& t : w.terms()) terms.push_back(format_rational(t));
  j["terms"] = terms;
  return j.dump(indent) + "\n";
}

SequenceWindow window_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.contains("terms") || !j["terms"].is_array() || !j.contains("origin_index") ||
      !j["origin_index"].is_number_integer())
    fail(ErrorCode::ParseError, "window wants terms[] and origin_index");
  std::vector<Rational> terms;
  for (const auto& t : j["terms"]) {
    if (!t.is_string()) fail(ErrorCode::ParseError, "terms must be strings");
    terms.push_back(parse_rational(t.get<std::string>()));
  }
  LensConstants k{rational_field(j, "alpha"), rational_field(j, "beta")};
  return SequenceWindow::from_terms(std::move(terms), j["origin_index"].get<int>(), k);
}

std::string underground_to_json(const UndergroundWindow& f, int indent) {
  json j;
  j["s"] = f.s.get_str();
  j["k"] = f.k.get_str();
  j["origin_index"] = f.origin_offset;
  json terms = json::array();
  for (const Int& t : f.terms) terms.push_back(t.get_str());
  j["terms"] = terms;
  return j.dump(indent) + "\n";
}

UndergroundWindow underground_from_json(const std::string& text) {
  json j = parse_json(text);
  if (!j.contains("terms") || !j["terms"].is_array() || !j.contains("origin_index") ||
      !j["origin_index"].is_number_integer())
    fail(ErrorCode::ParseError, "factor window wants terms[] and origin_index");
  UndergroundWindow f;
  for (const auto& t : j["terms"]) {
    if (!t.is_string()) fail(ErrorCode::ParseError, "terms must be strings");
    f.terms.push_back(to_int(parse_rational(t.get<std::string>())));
  }
  f.origin_offset = j["origin_index"].get<int>();
  f.s = to_int(rational_field(j, "s"));
  f.k = to_int(rational_field(j, "k"));
  return f;
}

}  // namespace lenseq
