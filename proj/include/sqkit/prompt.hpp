#pragma once

#include <array>
#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sqkit/annotate.hpp"
#include "sqkit/record.hpp"

namespace sqkit {

// The four instance fields a prompt can carry; ablations remove one.
enum class PromptField { Url, PostUrl, Handle, Snippet };

inline constexpr std::array<PromptField, 4> kAllPromptFields = {
    PromptField::Url, PromptField::PostUrl, PromptField::Handle, PromptField::Snippet};

// "URL", "POST_URL", "HANDLE", "SNIPPET".
std::string prompt_field_name(PromptField field);
std::optional<PromptField> prompt_field_from_name(const std::string& name);

struct FewshotExample {
  std::string url;
  std::string post_url;
  std::string handle;
  std::string snippet;
  std::string cot_paragraph;  // empty = no reasoning paragraph
  bool answer_yes = false;
};

struct PromptInstance {
  std::string url;
  std::string post_url;
  std::string handle;
  std::string snippet;
};

struct PromptSpec {
  Role role = Role::Commenter;
  bool include_cot = false;
  std::vector<FewshotExample> fewshot_examples;
  std::set<PromptField> ablation_mask;  // fields to omit everywhere
  PromptInstance instance;
};

// The binary question asked for each role ("Your job is to determine if ...").
const std::string& role_question(Role role);

// Loads {"ROLE": "question", ...}, overriding the built-in questions.
// Missing roles keep their defaults. Throws on unknown role keys.
std::map<Role, std::string> load_role_questions(const std::filesystem::path& json_path);

// The shipped default examples: five per role, answers mixed, every example
// carrying a reasoning paragraph for chain-of-thought mode.
const std::vector<FewshotExample>& default_fewshots(Role role);

// Loads {"ROLE": [{url, post_url, handle, snippet, cot, answer}, ...]}.
std::map<Role, std::vector<FewshotExample>> load_fewshots(
    const std::filesystem::path& json_path);

// Deterministic byte-for-byte rendering: analyst preamble + field glossary,
// role question, fewshot blocks (fields, optional CoT paragraph, answer
// line), then the instance fields. Fields in the ablation mask appear
// nowhere, glossary included.
std::string render_prompt(const PromptSpec& spec);

enum class VerdictValue { Yes, No, Unparseable };

std::string verdict_value_name(VerdictValue value);
std::optional<VerdictValue> verdict_value_from_name(const std::string& name);

// Scans for the last "The answer is yes/no" (case-insensitive, trailing
// punctuation tolerated); anything else is Unparseable.
VerdictValue parse_verdict(const std::string& completion);

}  // namespace sqkit
