#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "layoutgt/categories.hpp"
#include "layoutgt/textnorm.hpp"

namespace layoutgt {

// Closed set of node kinds recognized in JATS-style article XML. Tag names are
// mapped onto kinds by a KindTable.
enum class NodeKind {
  Text,  // character data
  Article,
  Front,
  JournalMeta,
  JournalId,
  ArticleMeta,
  TitleGroup,
  ArticleTitle,
  ContribGroup,
  Contrib,
  Name,
  Surname,
  GivenNames,
  Aff,
  Abstract,
  KwdGroup,
  Kwd,
  Permissions,
  Copyright,
  License,
  Body,
  Sec,
  Title,
  Paragraph,
  List,
  ListItem,
  Fig,
  TableWrap,
  TableWrapFoot,
  Table,
  Caption,
  Label,
  Fn,
  FnGroup,
  Back,
  Ack,
  Glossary,
  AppGroup,
  App,
  RefList,
  Ref,
  FloatsGroup,
  TexMath,
  DispFormula,
  InlineFormula,
  Alternatives,
  Graphic,
  Edition,
  InstitutionId,
  Inline,     // formatting and cross-references inside running text
  Container,  // block wrappers whose children are visited (boxed-text, disp-quote)
  Metadata,   // recognized, never displayed as matchable text
  Unknown,
};

std::string_view to_string(NodeKind kind) noexcept;
std::optional<NodeKind> parse_node_kind(std::string_view name) noexcept;

struct XmlNode {
  NodeKind kind = NodeKind::Unknown;
  std::string tag;   // empty for Text
  std::string path;  // position in the source document, e.g. /article/body/sec[2]/p[1]
  std::string data;  // character data, Text nodes only
  std::vector<std::pair<std::string, std::string>> attributes;
  std::vector<XmlNode> children;

  const std::string* attribute(std::string_view name) const;
};

// Depth-first concatenation of descendant character data. Block-level element
// boundaries contribute a space; inline markup does not. <name> renders as
// "given-names surname".
std::string flatten_text(const XmlNode& node);

// Tag name -> kind. Defaults cover the JATS subset used by article XML; a JSON
// object {"tag": "kind-name", ...} overrides or extends them.
class KindTable {
 public:
  static KindTable defaults();

  void load_overrides(std::istream& json);
  void load_overrides(const std::filesystem::path& path);
  void set(std::string tag, NodeKind kind);

  NodeKind kind_of(std::string_view tag) const;
  const std::map<std::string, NodeKind, std::less<>>& entries() const noexcept { return table_; }

 private:
  std::map<std::string, NodeKind, std::less<>> table_;
};

struct Article {
  XmlNode root;
  std::string journal_id;
  bool has_article_title = false;
};

// Throws ParseError on malformed XML or when the journal id is missing.
Article parse_article(std::istream& source, const KindTable& kinds = KindTable::defaults());
Article parse_article(const std::filesystem::path& path,
                      const KindTable& kinds = KindTable::defaults());

// Tags removed with their subtrees before matching. An entry is either a tag
// name or "parent/tag", which only matches under that parent.
struct RemovalSet {
  std::vector<std::string> entries;

  static RemovalSet defaults();
  bool matches(std::string_view parent_tag, std::string_view tag) const;
};

XmlNode prune(const XmlNode& tree, const RemovalSet& removal = RemovalSet::defaults());

// Moves every list, table-wrap and fig (outermost occurrences only) under a
// single floats-group child of the root, keeping their document order.
XmlNode restructure_floats(const XmlNode& tree);

// Source roles from the category taxonomy. category_of() maps each onto its
// layout category.
enum class NodeRole {
  ArticleTitle,
  Author,
  Affiliation,
  PaperInfo,
  Copyright,
  License,
  Abstract,
  Keywords,
  Paragraph,
  Footnote,
  Appendix,
  Reference,
  Acknowledgment,
  Abbreviation,
  SectionTitle,
  FigureLabel,
  FigureCaption,
  FigureBody,
  TableLabel,
  TableCaption,
  TableFootnote,
  TableBody,
  List,
};

std::string_view to_string(NodeRole role) noexcept;
std::optional<NodeRole> parse_node_role(std::string_view name) noexcept;

LayoutCategory category_of(NodeRole role) noexcept;
// Throws std::invalid_argument for names that are not a recognized role.
LayoutCategory category_of(std::string_view role_name);

// Section titles and caption labels become text when inline with what follows.
bool is_inline_candidate(NodeRole role) noexcept;

struct GroupNode {
  int id = -1;
  NodeRole role = NodeRole::Paragraph;
  std::string path;
  NormString text;
};

struct FigureEntry {
  std::optional<GroupNode> label;
  std::optional<GroupNode> caption;
  GroupNode body;
};

struct TableEntry {
  std::optional<GroupNode> label;
  std::optional<GroupNode> caption;
  std::vector<GroupNode> footnotes;
  GroupNode body;
};

struct NodeGroups {
  std::vector<GroupNode> sorted;  // reading order
  std::vector<GroupNode> unsorted;
  std::vector<FigureEntry> figures;
  std::vector<TableEntry> tables;
  std::vector<GroupNode> lists;
  std::vector<std::string> warnings;
};

NodeGroups group_nodes(const XmlNode& restructured);

// prune -> restructure_floats -> group_nodes.
NodeGroups prepare_groups(const Article& article, const RemovalSet& removal = RemovalSet::defaults());

}  // namespace layoutgt
