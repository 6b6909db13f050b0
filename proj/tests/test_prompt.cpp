#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "sqkit/prompt.hpp"

using namespace sqkit;
using namespace sqkit::testing;

namespace {

const char* kSourceDir = SQKIT_SOURCE_DIR;

int count_lines_starting_with(const std::string& text, const std::string& prefix) {
  int count = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(prefix, 0) == 0) count += 1;
  }
  return count;
}

FewshotExample example(std::string tag, bool yes, std::string cot) {
  FewshotExample ex;
  ex.url = "https://site.example/" + tag;
  ex.post_url = "https://twitter.com/" + tag + "/status/1";
  ex.handle = tag;
  ex.snippet = "Snippet text for " + tag + ".";
  ex.cot_paragraph = std::move(cot);
  ex.answer_yes = yes;
  return ex;
}

PromptSpec small_spec(Role role, bool cot) {
  PromptSpec spec;
  spec.role = role;
  spec.include_cot = cot;
  spec.fewshot_examples = {
      example("alpha", true, "Reasoning about alpha."),
      example("beta", false, "Reasoning about beta."),
  };
  spec.instance.url = "https://news.example/story";
  spec.instance.post_url = "https://twitter.com/poster/status/9";
  spec.instance.handle = "poster";
  spec.instance.snippet = "The page discusses a story.";
  return spec;
}

}  // namespace

TEST_CASE("prompt field names round-trip") {
  CHECK(prompt_field_name(PromptField::Url) == "URL");
  CHECK(prompt_field_name(PromptField::PostUrl) == "POST_URL");
  CHECK(prompt_field_name(PromptField::Handle) == "HANDLE");
  CHECK(prompt_field_name(PromptField::Snippet) == "SNIPPET");
  for (PromptField field : kAllPromptFields) {
    auto parsed = prompt_field_from_name(prompt_field_name(field));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == field);
  }
  CHECK_FALSE(prompt_field_from_name("url").has_value());
}

TEST_CASE("the commenter question is the exact built-in wording") {
  CHECK(role_question(Role::Commenter) ==
        "Your job is to determine if the embedded post is from someone who is commenting on "
        "the main topic of the webpage.");
  CHECK(role_question(Role::SelfPromoter) ==
        "Your job is to determine if the embedded post was created by the same entity who "
        "created the webpage (a self-promotion).");
  for (Role role : kAllRoles) {
    const std::string& question = role_question(role);
    CHECK(question.rfind("Your job is to determine if", 0) == 0);
    CHECK(question.back() == '.');
  }
}

TEST_CASE("a full prompt renders byte-for-byte as specified") {
  PromptSpec spec = small_spec(Role::Commenter, true);
  std::string expected =
      "You are a social media analyst looking at social media posts embedded in websites. "
      "Given the following information:\n"
      "\n"
      "URL: The URL of a webpage with an embedded social media post;\n"
      "POST_URL: The URL of the embedded social media post;\n"
      "HANDLE: The social media username of the author of the embedded post;\n"
      "SNIPPET: The webpage text that appears around the embedded post;\n"
      "\n" +
      role_question(Role::Commenter) +
      " Below are some examples:\n"
      "\n"
      "URL: https://site.example/alpha\n"
      "POST_URL: https://twitter.com/alpha/status/1\n"
      "HANDLE: alpha\n"
      "SNIPPET: Snippet text for alpha.\n"
      "Reasoning about alpha.\n"
      "The answer is yes\n"
      "\n"
      "URL: https://site.example/beta\n"
      "POST_URL: https://twitter.com/beta/status/1\n"
      "HANDLE: beta\n"
      "SNIPPET: Snippet text for beta.\n"
      "Reasoning about beta.\n"
      "The answer is no\n"
      "\n"
      "URL: https://news.example/story\n"
      "POST_URL: https://twitter.com/poster/status/9\n"
      "HANDLE: poster\n"
      "SNIPPET: The page discusses a story.\n";
  CHECK(render_prompt(spec) == expected);
  CHECK(render_prompt(spec) == render_prompt(spec));  // deterministic
}

TEST_CASE("chain-of-thought off drops only the reasoning paragraphs") {
  std::string with_cot = render_prompt(small_spec(Role::Expert, true));
  std::string without = render_prompt(small_spec(Role::Expert, false));
  CHECK(with_cot.find("Reasoning about alpha.") != std::string::npos);
  CHECK(without.find("Reasoning about alpha.") == std::string::npos);
  CHECK(count_lines_starting_with(without, "The answer is") == 2);
  CHECK(count_lines_starting_with(without, "SNIPPET: ") == 4);  // glossary + 2 + instance
}

TEST_CASE("ablation masks remove a field from glossary, examples, and instance") {
  for (PromptField masked : kAllPromptFields) {
    PromptSpec spec = small_spec(Role::Witness, true);
    spec.ablation_mask = {masked};
    std::string text = render_prompt(spec);
    for (PromptField field : kAllPromptFields) {
      // Count at line starts: "URL:" is a suffix of "POST_URL:", so substring
      // search would conflate the two.
      int lines = count_lines_starting_with(text, prompt_field_name(field) + ": ");
      if (field == masked) {
        CHECK(lines == 0);
      } else {
        CHECK(lines == 4);  // glossary + two examples + instance
      }
    }
  }
}

TEST_CASE("unmasked prompts keep every field everywhere") {
  std::string text = render_prompt(small_spec(Role::Subject, false));
  for (PromptField field : kAllPromptFields) {
    CHECK(count_lines_starting_with(text, prompt_field_name(field) + ": ") == 4);
  }
}

TEST_CASE("verdict parsing accepts the documented phrasings") {
  CHECK(parse_verdict("The answer is yes") == VerdictValue::Yes);
  CHECK(parse_verdict("the answer is no") == VerdictValue::No);
  CHECK(parse_verdict("THE ANSWER IS YES.") == VerdictValue::Yes);
  CHECK(parse_verdict("Well... the answer is no, clearly.") == VerdictValue::No);
  CHECK(parse_verdict("The answer is\nyes") == VerdictValue::Yes);
  CHECK(parse_verdict("Prefix text. So the answer is yes!") == VerdictValue::Yes);
}

TEST_CASE("the last parseable verdict wins") {
  CHECK(parse_verdict("The answer is yes. On reflection, the answer is no.") ==
        VerdictValue::No);
  CHECK(parse_verdict("the answer is no ... the answer is yes") == VerdictValue::Yes);
  // A later unparseable mention does not erase an earlier verdict.
  CHECK(parse_verdict("The answer is yes. The answer is unclear.") == VerdictValue::Yes);
}

TEST_CASE("word boundaries keep 'nothing' from reading as 'no'") {
  CHECK(parse_verdict("The answer is nothing") == VerdictValue::Unparseable);
  CHECK(parse_verdict("The answer is yesterday") == VerdictValue::Unparseable);
  CHECK(parse_verdict("The answer is no-doubt") == VerdictValue::No);  // hyphen boundary
  CHECK(parse_verdict("") == VerdictValue::Unparseable);
  CHECK(parse_verdict("I cannot decide.") == VerdictValue::Unparseable);
  CHECK(parse_verdict("The answer is maybe") == VerdictValue::Unparseable);
}

TEST_CASE("verdict names round-trip") {
  for (VerdictValue value :
       {VerdictValue::Yes, VerdictValue::No, VerdictValue::Unparseable}) {
    auto parsed = verdict_value_from_name(verdict_value_name(value));
    REQUIRE(parsed.has_value());
    CHECK(*parsed == value);
  }
  CHECK_FALSE(verdict_value_from_name("YES").has_value());
}

TEST_CASE("role questions load from the sample data file") {
  auto questions =
      load_role_questions(std::filesystem::path(kSourceDir) / "data" / "role_questions.json");
  REQUIRE(questions.size() == 8);
  for (Role role : kAllRoles) {
    CHECK(questions.at(role) == role_question(role));  // sample file mirrors the built-ins
  }
}

TEST_CASE("question overrides replace only the named roles") {
  TempDir dir;
  write_file(dir.file("q.json"), R"({"EXPERT": "Custom expert question?"})");
  auto questions = load_role_questions(dir.file("q.json"));
  CHECK(questions.at(Role::Expert) == "Custom expert question?");
  CHECK(questions.at(Role::Commenter) == role_question(Role::Commenter));

  write_file(dir.file("bad.json"), R"({"GURU": "nope"})");
  CHECK_THROWS(load_role_questions(dir.file("bad.json")));
  CHECK_THROWS(load_role_questions(dir.file("missing.json")));
}

TEST_CASE("fewshots load from the sample data file") {
  auto fewshots =
      load_fewshots(std::filesystem::path(kSourceDir) / "data" / "fewshots_sample.json");
  REQUIRE(fewshots.count(Role::Commenter) == 1);
  const auto& examples = fewshots.at(Role::Commenter);
  REQUIRE(examples.size() == 2);
  CHECK(examples[0].answer_yes);
  CHECK_FALSE(examples[1].answer_yes);
  CHECK_FALSE(examples[0].cot_paragraph.empty());
  CHECK(examples[0].handle == "steelfan88");
}

TEST_CASE("fewshot files reject unknown roles and bad answers") {
  TempDir dir;
  write_file(dir.file("bad_role.json"),
             R"({"GURU": [{"url": "u", "post_url": "p", "handle": "h", "snippet": "s", "answer": "yes"}]})");
  CHECK_THROWS(load_fewshots(dir.file("bad_role.json")));
  write_file(dir.file("bad_answer.json"),
             R"({"EXPERT": [{"url": "u", "post_url": "p", "handle": "h", "snippet": "s", "answer": "maybe"}]})");
  CHECK_THROWS(load_fewshots(dir.file("bad_answer.json")));
}

TEST_CASE("default fewshots ship five mixed examples per role with reasoning") {
  for (Role role : kAllRoles) {
    const auto& examples = default_fewshots(role);
    REQUIRE(examples.size() == 5);
    int yes = 0;
    for (const auto& ex : examples) {
      CHECK_FALSE(ex.url.empty());
      CHECK_FALSE(ex.post_url.empty());
      CHECK_FALSE(ex.handle.empty());
      CHECK_FALSE(ex.snippet.empty());
      CHECK_FALSE(ex.cot_paragraph.empty());
      if (ex.answer_yes) yes += 1;
    }
    CHECK(yes >= 1);
    CHECK(yes <= 4);  // answers mixed, never all one way
  }
}

TEST_CASE("the flagship commenter example keeps its canonical reasoning text") {
  const auto& examples = default_fewshots(Role::Commenter);
  REQUIRE(!examples.empty());
  CHECK(examples[0].cot_paragraph ==
        "The primary focus of the snippet is the Pittsburgh Steelers football team. The post "
        "is from a fan of the team commenting on one of the players. So the embedded post is "
        "from someone commenting on the topic of the webpage.");
  CHECK(examples[0].answer_yes);
}

namespace {

// One golden file per (role, cot, mask) combination: 8 x 2 x 5 = 80 files.
// Set SQKIT_UPDATE_GOLDENS=1 to regenerate after an intentional change.
std::filesystem::path golden_dir() {
  return std::filesystem::path(kSourceDir) / "tests" / "golden" / "prompts";
}

std::vector<std::pair<std::string, std::set<PromptField>>> golden_masks() {
  std::vector<std::pair<std::string, std::set<PromptField>>> masks;
  masks.emplace_back("none", std::set<PromptField>{});
  for (PromptField field : kAllPromptFields) {
    masks.emplace_back(prompt_field_name(field), std::set<PromptField>{field});
  }
  return masks;
}

PromptSpec golden_spec(Role role, bool cot, std::set<PromptField> mask) {
  PromptSpec spec;
  spec.role = role;
  spec.include_cot = cot;
  spec.fewshot_examples = default_fewshots(role);
  spec.ablation_mask = std::move(mask);
  spec.instance.url = "https://www.dailyharborpost.com/ferry-schedule-changes";
  spec.instance.post_url = "https://twitter.com/harborwatcher/status/552901";
  spec.instance.handle = "harborwatcher";
  spec.instance.snippet =
      "The city ferry authority announced new crossing times starting next month, citing "
      "crew shortages on the early runs.";
  return spec;
}

}  // namespace

TEST_CASE("rendered prompts match the golden corpus byte for byte") {
  bool update = std::getenv("SQKIT_UPDATE_GOLDENS") != nullptr;
  if (update) std::filesystem::create_directories(golden_dir());

  int checked = 0;
  for (Role role : kAllRoles) {
    for (bool cot : {false, true}) {
      for (const auto& [mask_name, mask] : golden_masks()) {
        std::string name =
            role_name(role) + (cot ? "_cot" : "_plain") + "_mask-" + mask_name + ".txt";
        std::filesystem::path path = golden_dir() / name;
        std::string rendered = render_prompt(golden_spec(role, cot, mask));
        if (update) {
          std::ofstream out(path, std::ios::binary);
          out << rendered;
        } else {
          INFO("golden file: ", name);
          REQUIRE(std::filesystem::exists(path));
          CHECK(read_file(path) == rendered);
        }
        checked += 1;
      }
    }
  }
  CHECK(checked == 80);
}
