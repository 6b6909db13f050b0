#include "sqkit/prompt.hpp"

#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "sqkit/text.hpp"

namespace sqkit {

std::string prompt_field_name(PromptField field) {
  switch (field) {
    case PromptField::Url: return "URL";
    case PromptField::PostUrl: return "POST_URL";
    case PromptField::Handle: return "HANDLE";
    case PromptField::Snippet: return "SNIPPET";
  }
  return "";
}

std::optional<PromptField> prompt_field_from_name(const std::string& name) {
  for (PromptField field : kAllPromptFields) {
    if (prompt_field_name(field) == name) return field;
  }
  return std::nullopt;
}

namespace {

std::map<Role, std::string> builtin_questions() {
  return {
      {Role::Expert,
       "Your job is to determine if the embedded post is from someone who has recognized "
       "expertise in the main topic of the webpage."},
      {Role::Influencer,
       "Your job is to determine if the embedded post is from someone who is a popular voice "
       "on the main topic of the webpage."},
      {Role::Authority,
       "Your job is to determine if the embedded post is from someone who is a recognized "
       "public figure or institution relevant to the webpage content."},
      {Role::Subject,
       "Your job is to determine if the embedded post is from someone who is the primary "
       "entity being discussed in the webpage."},
      {Role::Witness,
       "Your job is to determine if the embedded post is from someone who witnessed or "
       "directly participated in an event discussed in the webpage."},
      {Role::Commenter,
       "Your job is to determine if the embedded post is from someone who is commenting on "
       "the main topic of the webpage."},
      {Role::Marketer,
       "Your job is to determine if the webpage is marketing or advertising a product "
       "mentioned in the embedded post."},
      {Role::SelfPromoter,
       "Your job is to determine if the embedded post was created by the same entity who "
       "created the webpage (a self-promotion)."},
  };
}

const char* glossary_line(PromptField field) {
  switch (field) {
    case PromptField::Url:
      return "URL: The URL of a webpage with an embedded social media post;";
    case PromptField::PostUrl:
      return "POST_URL: The URL of the embedded social media post;";
    case PromptField::Handle:
      return "HANDLE: The social media username of the author of the embedded post;";
    case PromptField::Snippet:
      return "SNIPPET: The webpage text that appears around the embedded post;";
  }
  return "";
}

void append_fields(std::string& out, const std::set<PromptField>& mask, const std::string& url,
                   const std::string& post_url, const std::string& handle,
                   const std::string& snippet) {
  if (!mask.count(PromptField::Url)) out += "URL: " + url + "\n";
  if (!mask.count(PromptField::PostUrl)) out += "POST_URL: " + post_url + "\n";
  if (!mask.count(PromptField::Handle)) out += "HANDLE: " + handle + "\n";
  if (!mask.count(PromptField::Snippet)) out += "SNIPPET: " + snippet + "\n";
}

}  // namespace

const std::string& role_question(Role role) {
  static const std::map<Role, std::string> questions = builtin_questions();
  return questions.at(role);
}

std::map<Role, std::string> load_role_questions(const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open role questions: " + json_path.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  std::map<Role, std::string> questions = builtin_questions();
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto role = role_from_name(it.key());
    if (!role) throw std::runtime_error("unknown role in questions file: " + it.key());
    questions[*role] = it.value().get<std::string>();
  }
  return questions;
}

std::map<Role, std::vector<FewshotExample>> load_fewshots(
    const std::filesystem::path& json_path) {
  std::ifstream in(json_path);
  if (!in) throw std::runtime_error("cannot open fewshots: " + json_path.string());
  nlohmann::json doc = nlohmann::json::parse(in);
  std::map<Role, std::vector<FewshotExample>> out;
  for (auto it = doc.begin(); it != doc.end(); ++it) {
    auto role = role_from_name(it.key());
    if (!role) throw std::runtime_error("unknown role in fewshots file: " + it.key());
    std::vector<FewshotExample> examples;
    for (const auto& item : it.value()) {
      FewshotExample example;
      example.url = item.at("url").get<std::string>();
      example.post_url = item.at("post_url").get<std::string>();
      example.handle = item.at("handle").get<std::string>();
      example.snippet = item.at("snippet").get<std::string>();
      if (item.contains("cot")) example.cot_paragraph = item.at("cot").get<std::string>();
      std::string answer = to_lower(item.at("answer").get<std::string>());
      if (answer != "yes" && answer != "no") {
        throw std::runtime_error("fewshot answer must be yes or no, got: " + answer);
      }
      example.answer_yes = answer == "yes";
      examples.push_back(std::move(example));
    }
    out[*role] = std::move(examples);
  }
  return out;
}

std::string render_prompt(const PromptSpec& spec) {
  const std::string& question = role_question(spec.role);  // throws on unknown role
  const auto& mask = spec.ablation_mask;

  std::string out =
      "You are a social media analyst looking at social media posts embedded in websites. "
      "Given the following information:\n\n";
  for (PromptField field : kAllPromptFields) {
    if (!mask.count(field)) out += std::string(glossary_line(field)) + "\n";
  }
  out += "\n" + question + " Below are some examples:\n";

  for (const auto& example : spec.fewshot_examples) {
    out += "\n";
    append_fields(out, mask, example.url, example.post_url, example.handle, example.snippet);
    if (spec.include_cot && !example.cot_paragraph.empty()) {
      out += example.cot_paragraph + "\n";
    }
    out += example.answer_yes ? "The answer is yes\n" : "The answer is no\n";
  }

  out += "\n";
  append_fields(out, mask, spec.instance.url, spec.instance.post_url, spec.instance.handle,
                spec.instance.snippet);
  return out;
}

std::string verdict_value_name(VerdictValue value) {
  switch (value) {
    case VerdictValue::Yes: return "yes";
    case VerdictValue::No: return "no";
    case VerdictValue::Unparseable: return "unparseable";
  }
  return "";
}

std::optional<VerdictValue> verdict_value_from_name(const std::string& name) {
  if (name == "yes") return VerdictValue::Yes;
  if (name == "no") return VerdictValue::No;
  if (name == "unparseable") return VerdictValue::Unparseable;
  return std::nullopt;
}

VerdictValue parse_verdict(const std::string& completion) {
  std::string lowered = to_lower(completion);
  const std::string phrase = "the answer is";

  VerdictValue verdict = VerdictValue::Unparseable;
  size_t at = 0;
  while ((at = lowered.find(phrase, at)) != std::string::npos) {
    size_t cursor = at + phrase.size();
    at += 1;
    while (cursor < lowered.size() &&
           (lowered[cursor] == ' ' || lowered[cursor] == '\t' || lowered[cursor] == '\n' ||
            lowered[cursor] == '\r')) {
      cursor += 1;
    }
    auto word_follows = [&](const std::string& word) {
      if (lowered.compare(cursor, word.size(), word) != 0) return false;
      size_t end = cursor + word.size();
      // word boundary: end of text or a non-letter (so "nothing" != "no")
      return end >= lowered.size() || !std::isalpha(static_cast<unsigned char>(lowered[end]));
    };
    if (word_follows("yes")) {
      verdict = VerdictValue::Yes;
    } else if (word_follows("no")) {
      verdict = VerdictValue::No;
    }
  }
  return verdict;
}

}  // namespace sqkit
