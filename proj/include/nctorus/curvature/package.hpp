#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "nctorus/rearrangement/modular_function.hpp"
#include "nctorus/symbol/symbol_expr.hpp"

namespace nct {

enum class OperandTag { d1_d1, d2_d2, d1_d2, d2_d1, d1_sq, d2_sq, d11, d22, d12 };

enum class Channel { plain, chiral };

inline const char* tag_name(OperandTag t) {
  static const char* names[] = {"d1,d1", "d2,d2", "d1,d2", "d2,d1", "d1^2", "d2^2", "d11", "d22", "d12"};
  return names[static_cast<int>(t)];
}

inline OperandTag tag_from_name(const std::string& s) {
  for (int i = 0; i < 9; ++i)
    if (s == tag_name(static_cast<OperandTag>(i))) return static_cast<OperandTag>(i);
  throw ParseError("unknown operand tag: " + s);
}

inline const char* channel_name(Channel c) { return c == Channel::plain ? "plain" : "chiral"; }

inline int tag_operands(OperandTag t) {
  switch (t) {
    case OperandTag::d1_d1:
    case OperandTag::d2_d2:
    case OperandTag::d1_d2:
    case OperandTag::d2_d1:
      return 2;
    default:
      return 1;
  }
}

/// Letters that make up the operand(s); product tags list the letter twice.
inline std::vector<Letter> tag_letters(OperandTag t) {
  switch (t) {
    case OperandTag::d1_d1:
    case OperandTag::d1_sq:
      return {Letter::d1, Letter::d1};
    case OperandTag::d2_d2:
    case OperandTag::d2_sq:
      return {Letter::d2, Letter::d2};
    case OperandTag::d1_d2:
      return {Letter::d1, Letter::d2};
    case OperandTag::d2_d1:
      return {Letter::d2, Letter::d1};
    case OperandTag::d11:
      return {Letter::d11};
    case OperandTag::d22:
      return {Letter::d22};
    case OperandTag::d12:
      return {Letter::d12};
  }
  return {};
}

/// Tag for a word's letters; `adjacent` is true when nothing sits between two letters.
inline OperandTag classify(const std::vector<Letter>& letters, bool adjacent) {
  if (letters.size() == 1) {
    switch (letters[0]) {
      case Letter::d11:
        return OperandTag::d11;
      case Letter::d22:
        return OperandTag::d22;
      case Letter::d12:
        return OperandTag::d12;
      default:
        break;
    }
  } else if (letters.size() == 2 && is_first_order(letters[0]) && is_first_order(letters[1])) {
    const bool a1 = letters[0] == Letter::d1, b1 = letters[1] == Letter::d1;
    if (adjacent && a1 == b1) return a1 ? OperandTag::d1_sq : OperandTag::d2_sq;
    if (a1 && b1) return OperandTag::d1_d1;
    if (!a1 && !b1) return OperandTag::d2_d2;
    return a1 ? OperandTag::d1_d2 : OperandTag::d2_d1;
  }
  throw ShapeError("no operand tag for this letter sequence");
}

struct CurvatureEntry {
  OperandTag tag;
  ModularFunction f;
};

struct CurvaturePackage {
  Channel channel = Channel::plain;
  std::vector<CurvatureEntry> entries;

  const ModularFunction* find(OperandTag t) const {
    for (const auto& e : entries)
      if (e.tag == t) return &e.f;
    return nullptr;
  }
  ModularFunction& at(OperandTag t) {
    for (auto& e : entries)
      if (e.tag == t) return e.f;
    throw ShapeError(std::string("package has no entry ") + tag_name(t));
  }
  void set(OperandTag t, ModularFunction f) {
    for (auto& e : entries)
      if (e.tag == t) {
        e.f = std::move(f);
        return;
      }
    entries.push_back({t, std::move(f)});
  }
};

inline nlohmann::json to_json(const CurvaturePackage& p) {
  nlohmann::json entries = nlohmann::json::array();
  for (const auto& e : p.entries) entries.push_back({{"operands", tag_name(e.tag)}, {"function", to_json(e.f)}});
  return {{"channel", channel_name(p.channel)}, {"entries", entries}};
}

inline CurvaturePackage curvature_package_from_json(const nlohmann::json& j) {
  CurvaturePackage p;
  p.channel = j.at("channel").get<std::string>() == "chiral" ? Channel::chiral : Channel::plain;
  for (const auto& e : j.at("entries"))
    p.entries.push_back({tag_from_name(e.at("operands").get<std::string>()), modular_function_from_json(e.at("function"))});
  return p;
}

}  // namespace nct
