#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace ffn {

// The six news categories. Enum order defines the class index used by the
// models (logit position) and by the confusion matrix.
enum class Label : int {
  True = 0,
  ManipulatedContent = 1,
  FalseConnection = 2,
  Satire = 3,
  MisleadingContent = 4,
  ImposterContent = 5,
};

inline constexpr std::size_t kNumClasses = 6;

// The five fake categories (everything but True), used for the restricted
// micro/macro averages.
inline constexpr std::array<Label, 5> kFakeClasses = {
    Label::ManipulatedContent, Label::FalseConnection, Label::Satire,
    Label::MisleadingContent, Label::ImposterContent};

inline const char* label_name(Label l) {
  switch (l) {
    case Label::True: return "true";
    case Label::ManipulatedContent: return "manipulated_content";
    case Label::FalseConnection: return "false_connection";
    case Label::Satire: return "satire";
    case Label::MisleadingContent: return "misleading_content";
    case Label::ImposterContent: return "imposter_content";
  }
  return "?";
}

inline const char* label_display_name(Label l) {
  switch (l) {
    case Label::True: return "True";
    case Label::ManipulatedContent: return "Manipulated content";
    case Label::FalseConnection: return "False connection";
    case Label::Satire: return "Satire";
    case Label::MisleadingContent: return "Misleading content";
    case Label::ImposterContent: return "Imposter content";
  }
  return "?";
}

enum class Split { Train, Validation, Test };

inline const char* split_name(Split s) {
  switch (s) {
    case Split::Train: return "train";
    case Split::Validation: return "validation";
    case Split::Test: return "test";
  }
  return "?";
}

inline std::optional<Split> split_from_name(std::string_view s) {
  if (s == "train") return Split::Train;
  if (s == "validation" || s == "valid" || s == "val") return Split::Validation;
  if (s == "test") return Split::Test;
  return std::nullopt;
}

}  // namespace ffn
