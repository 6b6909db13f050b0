#include <doctest.h>

#include "sqkit/html.hpp"

using namespace sqkit;

TEST_CASE("parse builds a tree with lowered names and attributes") {
  html::Document doc = html::parse("<DIV id=\"x\" CLASS='a b'><p>hi</p></DIV>");
  const html::Node* div = doc.find_first("div");
  REQUIRE(div);
  REQUIRE(div->attr("id"));
  CHECK(*div->attr("id") == "x");
  CHECK(div->has_class_token("a"));
  CHECK(div->has_class_token("b"));
  CHECK_FALSE(div->has_class_token("ab"));
  const html::Node* p = doc.find_first("p");
  REQUIRE(p);
  CHECK(p->parent == div);
}

TEST_CASE("class token matching is exact and case-sensitive") {
  html::Document doc = html::parse("<blockquote class=\"tiktok-embed extra\"></blockquote>");
  CHECK(doc.find_all("blockquote", "tiktok-embed").size() == 1);
  CHECK(doc.find_all("blockquote", "Tiktok-Embed").empty());
  CHECK(doc.find_all("blockquote", "tiktok").empty());
  CHECK(doc.find_all("blockquote", "extra").size() == 1);
}

TEST_CASE("find_all returns matches in document order") {
  html::Document doc = html::parse(
      "<div class=\"InstagramEmbedContainer\">1</div>"
      "<blockquote class=\"tiktok-embed\">2</blockquote>"
      "<div class=\"InstagramEmbedContainer\">3</div>");
  auto divs = doc.find_all("div", "InstagramEmbedContainer");
  REQUIRE(divs.size() == 2);
  CHECK(divs[0]->order < divs[1]->order);
  auto quotes = doc.find_all("blockquote", "tiktok-embed");
  REQUIRE(quotes.size() == 1);
  CHECK(divs[0]->order < quotes[0]->order);
  CHECK(quotes[0]->order < divs[1]->order);
}

TEST_CASE("visible_text skips script style template and comments") {
  html::Document doc = html::parse(
      "<div>before<script>var x = 1;</script><style>.a{}</style>"
      "<template>ghost</template><!-- note -->after</div>");
  CHECK(html::visible_text(doc.root()) == "beforeafter");
}

TEST_CASE("visible_text collapses whitespace") {
  html::Document doc = html::parse("<p>  one \n two  </p><p> three </p>");
  CHECK(html::visible_text(doc.root()) == "one two three");
}

TEST_CASE("entities decode in text and attributes") {
  html::Document doc = html::parse("<p title=\"a&amp;b\">x &lt; y &#65;&#x42; &nbsp;z</p>");
  const html::Node* p = doc.find_first("p");
  REQUIRE(p);
  CHECK(*p->attr("title") == "a&b");
  CHECK(html::visible_text(*p) == "x < y AB z");
  CHECK(html::decode_entities("&quot;&apos;&gt;") == "\"'>");
}

TEST_CASE("malformed markup never aborts") {
  // Unclosed elements.
  html::Document a = html::parse("<div><p>text");
  CHECK(html::visible_text(a.root()) == "text");
  // Stray close tags.
  html::Document b = html::parse("</div>text</p></body>");
  CHECK(html::visible_text(b.root()) == "text");
  // Nonsense angle brackets degrade to text.
  html::Document c = html::parse("a < b and c > d");
  CHECK(html::visible_text(c.root()).find("a") == 0);
  // Attribute soup.
  html::Document d = html::parse("<div a b= c='1 =2' d=\">\">ok</div>");
  CHECK(html::visible_text(d.root()) == "ok");
  // Empty input.
  html::Document e = html::parse("");
  CHECK(html::visible_text(e.root()).empty());
}

TEST_CASE("implied end tags close open paragraphs") {
  html::Document doc = html::parse("<p>one<p>two</p>");
  auto first = doc.find_first("p");
  REQUIRE(first);
  // "two" must not be nested inside the first paragraph.
  CHECK(html::visible_text(*first) == "one");
}

TEST_CASE("void elements take no children") {
  html::Document doc = html::parse("<div>a<br>b<img src=\"x\">c</div>");
  const html::Node* br = doc.find_first("br");
  REQUIRE(br);
  CHECK(br->children.empty());
  CHECK(html::visible_text(doc.root()) == "abc");
}

TEST_CASE("order fields are preorder positions") {
  html::Document doc = html::parse("<div><span>a</span></div><p>b</p>");
  const html::Node* div = doc.find_first("div");
  const html::Node* span = doc.find_first("span");
  const html::Node* p = doc.find_first("p");
  REQUIRE((div && span && p));
  CHECK(div->order < span->order);
  CHECK(span->order < p->order);
}
