#include <sstream>

#include "doctest.h"
#include "layoutgt/error.hpp"
#include "layoutgt/xml.hpp"

using namespace layoutgt;

namespace {

Article parse(const std::string& text, const KindTable& kinds = KindTable::defaults()) {
  std::istringstream in(text);
  return parse_article(in, kinds);
}

const std::string kFront =
    R"(<front><journal-meta><journal-id journal-id-type="publisher-id">jsr</journal-id>)"
    R"(<journal-id journal-id-type="nlm-ta">J Synth Res</journal-id></journal-meta>)";

std::string article(const std::string& meta, const std::string& body, const std::string& back = "") {
  return "<article>" + kFront + "<article-meta>" + meta + "</article-meta></front><body>" + body +
         "</body>" + (back.empty() ? "" : "<back>" + back + "</back>") + "</article>";
}

std::vector<std::string> texts(const std::vector<GroupNode>& nodes) {
  std::vector<std::string> out;
  for (const auto& n : nodes) out.push_back(n.text.utf8());
  return out;
}

const XmlNode* find_tag(const XmlNode& node, std::string_view tag) {
  if (node.tag == tag) return &node;
  for (const auto& c : node.children) {
    if (const auto* f = find_tag(c, tag)) return f;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("journal id prefers the nlm-ta form") {
  const auto a = parse(article("<title-group><article-title>T</article-title></title-group>", ""));
  CHECK(a.journal_id == "J Synth Res");
  CHECK(a.has_article_title);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse("<article><front>"), ParseError);
  CHECK_THROWS_AS(parse("<book/>"), ParseError);
  CHECK_THROWS_AS(parse("<article><front><article-meta/></front></article>"), ParseError);
}

TEST_CASE("paths count same-tag siblings") {
  const auto a = parse(article("", "<sec><p>a</p><p>b</p></sec><sec><title>t</title><p>c</p></sec>"));
  const auto groups = prepare_groups(a);
  REQUIRE(groups.sorted.size() == 4);
  CHECK(groups.sorted[0].path == "/article/body[1]/sec[1]/p[1]");
  CHECK(groups.sorted[1].path == "/article/body[1]/sec[1]/p[2]");
  CHECK(groups.sorted[2].path == "/article/body[1]/sec[2]/title[1]");
  CHECK(groups.sorted[3].path == "/article/body[1]/sec[2]/p[1]");
}

TEST_CASE("inline markup joins without spaces, blocks with") {
  const auto a = parse(article("", "<p>H<sub>2</sub>O is <italic>wet</italic><xref ref-type=\"bibr\">1</xref>.</p>"));
  const auto groups = prepare_groups(a);
  REQUIRE(groups.sorted.size() == 1);
  CHECK(groups.sorted[0].text.utf8() == "H2O is wet1.");
  CHECK(groups.sorted[0].role == NodeRole::Paragraph);
}

TEST_CASE("front matter is split into sorted and unsorted groups") {
  const std::string meta =
      "<title-group><article-title>A study</article-title></title-group>"
      "<contrib-group><contrib><name><surname>Silva</surname><given-names>Ana</given-names></name></contrib>"
      "<contrib><name><surname>Okafor</surname><given-names>Ben</given-names></name></contrib></contrib-group>"
      "<aff id=\"a1\">Example University</aff>"
      "<permissions><copyright-statement>© 2021 The Authors</copyright-statement>"
      "<license><license-p>CC BY</license-p></license></permissions>"
      "<abstract><title>Abstract</title><p>We did things.</p></abstract>"
      "<kwd-group><title>Keywords</title><kwd>alpha</kwd><kwd>beta</kwd></kwd-group>";
  const auto groups = prepare_groups(parse(article(meta, "<p>Body.</p>")));
  CHECK(texts(groups.sorted) ==
        std::vector<std::string>{"A study", "Abstract", "We did things.", "Keywords alpha beta", "Body."});
  CHECK(groups.sorted[0].role == NodeRole::ArticleTitle);
  CHECK(groups.sorted[1].role == NodeRole::SectionTitle);
  CHECK(groups.sorted[2].role == NodeRole::Abstract);
  CHECK(groups.sorted[3].role == NodeRole::Keywords);
  CHECK(texts(groups.unsorted) ==
        std::vector<std::string>{"Ana Silva, Ben Okafor", "Example University", "© 2021 The Authors", "CC BY"});
  CHECK(groups.unsorted[0].role == NodeRole::Author);
  CHECK(groups.unsorted[0].path == "/article/front[1]/article-meta[1]/contrib-group[1]");
  CHECK(groups.unsorted[2].role == NodeRole::Copyright);
  CHECK(groups.unsorted[3].role == NodeRole::License);
}

TEST_CASE("section labels prefix their titles") {
  const auto groups = prepare_groups(parse(article("", "<sec><label>2</label><title>Methods</title><p>x</p></sec>")));
  REQUIRE(groups.sorted.size() == 2);
  CHECK(groups.sorted[0].text.utf8() == "2 Methods");
  CHECK(groups.sorted[0].path == "/article/body[1]/sec[1]/title[1]");
}

TEST_CASE("floats move to the floats group") {
  const std::string body =
      "<sec><p>before</p>"
      "<fig id=\"f1\"><label>Figure 1</label><caption><p>A plot.</p></caption><graphic/></fig>"
      "<p>between <list><list-item><p>one</p></list-item></list></p>"
      "<table-wrap><label>Table 1</label><caption><p>Numbers.</p></caption><table><tr><td>1</td></tr></table>"
      "<table-wrap-foot><fn><p>a Note.</p></fn></table-wrap-foot></table-wrap></sec>";
  const auto a = parse(article("", body));
  const auto restructured = restructure_floats(prune(a.root));
  const auto* group = find_tag(restructured, "floats-group");
  REQUIRE(group != nullptr);
  CHECK(group->path == "/article/floats-group[1]");
  REQUIRE(group->children.size() == 3);
  CHECK(group->children[0].tag == "fig");
  CHECK(group->children[1].tag == "list");
  CHECK(group->children[2].tag == "table-wrap");
  CHECK(find_tag(*find_tag(restructured, "body"), "fig") == nullptr);

  const auto groups = group_nodes(restructured);
  CHECK(texts(groups.sorted) == std::vector<std::string>{"before", "between"});
  REQUIRE(groups.figures.size() == 1);
  CHECK(groups.figures[0].label->text.utf8() == "Figure 1");
  CHECK(groups.figures[0].caption->text.utf8() == "A plot.");
  CHECK(groups.figures[0].body.path == "/article/body[1]/sec[1]/fig[1]");
  REQUIRE(groups.lists.size() == 1);
  CHECK(groups.lists[0].text.utf8() == "one");
  REQUIRE(groups.tables.size() == 1);
  REQUIRE(groups.tables[0].footnotes.size() == 1);
  CHECK(groups.tables[0].footnotes[0].text.utf8() == "a Note.");
  CHECK(groups.tables[0].footnotes[0].role == NodeRole::TableFootnote);
}

TEST_CASE("restructuring is idempotent") {
  const auto a = parse(article("", "<sec><fig><caption><p>c</p></caption></fig><p>x<list><list-item><p>y</p></list-item></list></p></sec>"));
  const auto once = restructure_floats(prune(a.root));
  const auto twice = restructure_floats(once);
  const auto g1 = group_nodes(once);
  const auto g2 = group_nodes(twice);
  CHECK(texts(g1.sorted) == texts(g2.sorted));
  CHECK(texts(g1.lists) == texts(g2.lists));
  REQUIRE(g2.figures.size() == 1);
  CHECK(g2.figures[0].body.path == g1.figures[0].body.path);
  const auto* fg = find_tag(twice, "floats-group");
  REQUIRE(fg);
  CHECK(fg->children.size() == 2);
}

TEST_CASE("pruning removes formulas and graphics") {
  const auto a = parse(article("", "<p>Energy <inline-formula><alternatives><tex-math>E=mc^2</tex-math>"
                                   "<mml:math><mml:mi>E</mml:mi></mml:math></alternatives></inline-formula> is"
                                   "<disp-formula>x</disp-formula> conserved.</p>"));
  const auto groups = prepare_groups(a);
  REQUIRE(groups.sorted.size() == 1);
  CHECK(groups.sorted[0].text.utf8() == "Energy is conserved.");
  RemovalSet none;
  const auto kept = group_nodes(restructure_floats(prune(a.root, none)));
  CHECK(kept.sorted[0].text.utf8() != "Energy is conserved.");
}

TEST_CASE("back matter roles") {
  const std::string back =
      "<ack><title>Acknowledgments</title><p>Thanks.</p></ack>"
      "<ref-list><title>References</title><ref id=\"r1\"><mixed-citation>Doe J. 2020.</mixed-citation></ref></ref-list>"
      "<fn-group><fn><p>Conflict: none.</p></fn></fn-group>";
  const auto groups = prepare_groups(parse(article("", "<p>x</p>", back)));
  CHECK(texts(groups.sorted) == std::vector<std::string>{"x", "References", "Doe J. 2020."});
  CHECK(groups.sorted[2].role == NodeRole::Reference);
  CHECK(texts(groups.unsorted) == std::vector<std::string>{"Acknowledgments", "Thanks.", "Conflict: none."});
  CHECK(groups.unsorted[1].role == NodeRole::Acknowledgment);
  CHECK(groups.unsorted[2].role == NodeRole::Footnote);
}

TEST_CASE("unknown elements warn, overrides recognise them") {
  const std::string text = article("", "<custom-block>Odd</custom-block><p>x</p>");
  const auto groups = prepare_groups(parse(text));
  REQUIRE(groups.warnings.size() == 1);
  CHECK(groups.warnings[0].find("custom-block") != std::string::npos);

  KindTable kinds = KindTable::defaults();
  std::istringstream overrides(R"({"custom-block": "paragraph"})");
  kinds.load_overrides(overrides);
  const auto g2 = prepare_groups(parse(text, kinds));
  CHECK(g2.warnings.empty());
  CHECK(texts(g2.sorted) == std::vector<std::string>{"Odd", "x"});

  std::istringstream bad(R"({"custom-block": "not-a-kind"})");
  CHECK_THROWS_AS(kinds.load_overrides(bad), ParseError);
}

TEST_CASE("role to category mapping") {
  CHECK(category_of(NodeRole::ArticleTitle) == LayoutCategory::Title);
  CHECK(category_of(NodeRole::SectionTitle) == LayoutCategory::Title);
  CHECK(category_of(NodeRole::FigureCaption) == LayoutCategory::Text);
  CHECK(category_of(NodeRole::TableFootnote) == LayoutCategory::Text);
  CHECK(category_of(NodeRole::Author) == LayoutCategory::Text);
  CHECK(category_of(NodeRole::List) == LayoutCategory::List);
  CHECK(category_of(NodeRole::TableBody) == LayoutCategory::Table);
  CHECK(category_of(NodeRole::FigureBody) == LayoutCategory::Figure);
  CHECK(category_of("figure-label") == LayoutCategory::Title);
  CHECK_THROWS_AS(category_of("sidebar"), std::invalid_argument);
  CHECK(is_inline_candidate(NodeRole::SectionTitle));
  CHECK_FALSE(is_inline_candidate(NodeRole::ArticleTitle));
}
