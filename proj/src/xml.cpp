#include "layoutgt/xml.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <iterator>
#include <map>
#include <stdexcept>

#include <expat.h>

#include "json.hpp"
#include "layoutgt/error.hpp"

namespace layoutgt {

namespace {

struct KindName {
  NodeKind kind;
  std::string_view name;
};

constexpr KindName kKindNames[] = {
    {NodeKind::Text, "text"},
    {NodeKind::Article, "article"},
    {NodeKind::Front, "front"},
    {NodeKind::JournalMeta, "journal-meta"},
    {NodeKind::JournalId, "journal-id"},
    {NodeKind::ArticleMeta, "article-meta"},
    {NodeKind::TitleGroup, "title-group"},
    {NodeKind::ArticleTitle, "article-title"},
    {NodeKind::ContribGroup, "contrib-group"},
    {NodeKind::Contrib, "contrib"},
    {NodeKind::Name, "name"},
    {NodeKind::Surname, "surname"},
    {NodeKind::GivenNames, "given-names"},
    {NodeKind::Aff, "aff"},
    {NodeKind::Abstract, "abstract"},
    {NodeKind::KwdGroup, "kwd-group"},
    {NodeKind::Kwd, "kwd"},
    {NodeKind::Permissions, "permissions"},
    {NodeKind::Copyright, "copyright"},
    {NodeKind::License, "license"},
    {NodeKind::Body, "body"},
    {NodeKind::Sec, "sec"},
    {NodeKind::Title, "title"},
    {NodeKind::Paragraph, "paragraph"},
    {NodeKind::List, "list"},
    {NodeKind::ListItem, "list-item"},
    {NodeKind::Fig, "fig"},
    {NodeKind::TableWrap, "table-wrap"},
    {NodeKind::TableWrapFoot, "table-wrap-foot"},
    {NodeKind::Table, "table"},
    {NodeKind::Caption, "caption"},
    {NodeKind::Label, "label"},
    {NodeKind::Fn, "fn"},
    {NodeKind::FnGroup, "fn-group"},
    {NodeKind::Back, "back"},
    {NodeKind::Ack, "ack"},
    {NodeKind::Glossary, "glossary"},
    {NodeKind::AppGroup, "app-group"},
    {NodeKind::App, "app"},
    {NodeKind::RefList, "ref-list"},
    {NodeKind::Ref, "ref"},
    {NodeKind::FloatsGroup, "floats-group"},
    {NodeKind::TexMath, "tex-math"},
    {NodeKind::DispFormula, "disp-formula"},
    {NodeKind::InlineFormula, "inline-formula"},
    {NodeKind::Alternatives, "alternatives"},
    {NodeKind::Graphic, "graphic"},
    {NodeKind::Edition, "edition"},
    {NodeKind::InstitutionId, "institution-id"},
    {NodeKind::Inline, "inline"},
    {NodeKind::Container, "container"},
    {NodeKind::Metadata, "metadata"},
    {NodeKind::Unknown, "unknown"},
};

struct RoleName {
  NodeRole role;
  std::string_view name;
};

constexpr RoleName kRoleNames[] = {
    {NodeRole::ArticleTitle, "article-title"},
    {NodeRole::Author, "author"},
    {NodeRole::Affiliation, "affiliation"},
    {NodeRole::PaperInfo, "paper-information"},
    {NodeRole::Copyright, "copyright"},
    {NodeRole::License, "license"},
    {NodeRole::Abstract, "abstract"},
    {NodeRole::Keywords, "keywords"},
    {NodeRole::Paragraph, "paragraph"},
    {NodeRole::Footnote, "footnote"},
    {NodeRole::Appendix, "appendix"},
    {NodeRole::Reference, "reference"},
    {NodeRole::Acknowledgment, "acknowledgment"},
    {NodeRole::Abbreviation, "abbreviation"},
    {NodeRole::SectionTitle, "section-title"},
    {NodeRole::FigureLabel, "figure-label"},
    {NodeRole::FigureCaption, "figure-caption"},
    {NodeRole::FigureBody, "figure-body"},
    {NodeRole::TableLabel, "table-label"},
    {NodeRole::TableCaption, "table-caption"},
    {NodeRole::TableFootnote, "table-footnote"},
    {NodeRole::TableBody, "table-body"},
    {NodeRole::List, "list"},
};

bool is_inline_kind(NodeKind kind) {
  return kind == NodeKind::Text || kind == NodeKind::Inline || kind == NodeKind::InlineFormula ||
         kind == NodeKind::Alternatives || kind == NodeKind::Unknown;
}

bool is_float_kind(NodeKind kind) {
  return kind == NodeKind::List || kind == NodeKind::Fig || kind == NodeKind::TableWrap;
}

const XmlNode* first_child(const XmlNode& node, NodeKind kind) {
  for (const auto& c : node.children) {
    if (c.kind == kind) return &c;
  }
  return nullptr;
}

void flatten_into(const XmlNode& node, std::string& out) {
  if (node.kind == NodeKind::Text) {
    out += node.data;
    return;
  }
  if (node.kind == NodeKind::Name) {
    out += ' ';
    if (const auto* given = first_child(node, NodeKind::GivenNames)) flatten_into(*given, out);
    out += ' ';
    if (const auto* surname = first_child(node, NodeKind::Surname)) flatten_into(*surname, out);
    out += ' ';
    return;
  }
  const bool block = !is_inline_kind(node.kind);
  if (block) out += ' ';
  for (const auto& c : node.children) flatten_into(c, out);
  if (block) out += ' ';
}

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// ---------------------------------------------------------------------------
// expat tree builder

struct Frame {
  XmlNode node;
  std::map<std::string, int, std::less<>> tag_counts;
};

struct Builder {
  const KindTable* kinds = nullptr;
  std::vector<Frame> stack;
  std::optional<XmlNode> root;
};

void XMLCALL on_start(void* user, const XML_Char* name, const XML_Char** attrs) {
  auto& b = *static_cast<Builder*>(user);
  Frame frame;
  frame.node.tag = name;
  frame.node.kind = b.kinds->kind_of(frame.node.tag);
  if (b.stack.empty()) {
    frame.node.path = "/" + frame.node.tag;
  } else {
    const int n = ++b.stack.back().tag_counts[frame.node.tag];
    frame.node.path = b.stack.back().node.path + "/" + frame.node.tag + "[" + std::to_string(n) + "]";
  }
  for (std::size_t i = 0; attrs[i] != nullptr; i += 2) {
    frame.node.attributes.emplace_back(attrs[i], attrs[i + 1]);
  }
  b.stack.push_back(std::move(frame));
}

void XMLCALL on_end(void* user, const XML_Char*) {
  auto& b = *static_cast<Builder*>(user);
  XmlNode node = std::move(b.stack.back().node);
  b.stack.pop_back();
  if (b.stack.empty()) {
    b.root = std::move(node);
  } else {
    b.stack.back().node.children.push_back(std::move(node));
  }
}

void XMLCALL on_text(void* user, const XML_Char* s, int len) {
  auto& b = *static_cast<Builder*>(user);
  if (b.stack.empty()) return;
  auto& children = b.stack.back().node.children;
  if (children.empty() || children.back().kind != NodeKind::Text) {
    XmlNode text;
    text.kind = NodeKind::Text;
    children.push_back(std::move(text));
  }
  children.back().data.append(s, static_cast<std::size_t>(len));
}

// Entities declared only in an external DTD are dropped.
void XMLCALL on_skipped_entity(void*, const XML_Char*, int) {}

void collect(const XmlNode& node, NodeKind kind, std::vector<const XmlNode*>& out) {
  if (node.kind == kind) out.push_back(&node);
  for (const auto& c : node.children) collect(c, kind, out);
}

std::string find_journal_id(const XmlNode& root) {
  const XmlNode* front = first_child(root, NodeKind::Front);
  if (front == nullptr) return {};
  const XmlNode* meta = first_child(*front, NodeKind::JournalMeta);
  if (meta == nullptr) return {};
  std::vector<const XmlNode*> ids;
  collect(*meta, NodeKind::JournalId, ids);
  const XmlNode* chosen = nullptr;
  for (const auto* id : ids) {
    const auto* type = id->attribute("journal-id-type");
    if (type != nullptr && *type == "nlm-ta" && !trim(flatten_text(*id)).empty()) {
      chosen = id;
      break;
    }
  }
  if (chosen == nullptr) {
    for (const auto* id : ids) {
      if (!trim(flatten_text(*id)).empty()) {
        chosen = id;
        break;
      }
    }
  }
  return chosen == nullptr ? std::string{} : trim(flatten_text(*chosen));
}

// ---------------------------------------------------------------------------
// grouping

class Grouper {
 public:
  NodeGroups run(const XmlNode& root) {
    for (const auto& c : root.children) {
      switch (c.kind) {
        case NodeKind::Front: front(c); break;
        case NodeKind::Body: section(c, groups_.sorted, NodeRole::Paragraph); break;
        case NodeKind::Back: back(c); break;
        case NodeKind::FloatsGroup: floats(c); break;
        default: other(c, "article"); break;
      }
    }
    return std::move(groups_);
  }

 private:
  std::optional<GroupNode> make(NodeRole role, const XmlNode& node, const std::string& text) {
    NormString norm = normalize_kd(text);
    if (norm.empty()) return std::nullopt;
    return GroupNode{next_id_++, role, node.path, std::move(norm)};
  }

  void add(std::vector<GroupNode>& dest, NodeRole role, const XmlNode& node, const std::string& text) {
    if (auto g = make(role, node, text)) dest.push_back(std::move(*g));
  }
  void add(std::vector<GroupNode>& dest, NodeRole role, const XmlNode& node) {
    add(dest, role, node, flatten_text(node));
  }

  void other(const XmlNode& node, std::string_view context) {
    switch (node.kind) {
      case NodeKind::Text:
      case NodeKind::Metadata:
        return;
      case NodeKind::Unknown:
        groups_.warnings.push_back("unknown element <" + node.tag + "> at " + node.path +
                                   " skipped");
        return;
      default:
        if (is_float_kind(node.kind)) {
          float_node(node);
          return;
        }
        if (!trim(flatten_text(node)).empty()) {
          groups_.warnings.push_back("element <" + node.tag + "> at " + node.path +
                                     " not expected in " + std::string(context) + ", skipped");
        }
    }
  }

  void front(const XmlNode& node) {
    for (const auto& c : node.children) {
      if (c.kind == NodeKind::ArticleMeta) {
        article_meta(c);
      } else if (c.kind != NodeKind::JournalMeta) {
        other(c, "front");
      }
    }
  }

  void article_meta(const XmlNode& node) {
    for (const auto& c : node.children) {
      switch (c.kind) {
        case NodeKind::TitleGroup:
          for (const auto& t : c.children) {
            if (t.kind == NodeKind::ArticleTitle) add(groups_.sorted, NodeRole::ArticleTitle, t);
          }
          break;
        case NodeKind::ArticleTitle: add(groups_.sorted, NodeRole::ArticleTitle, c); break;
        case NodeKind::ContribGroup: contrib_group(c); break;
        case NodeKind::Aff: add(groups_.unsorted, NodeRole::Affiliation, c); break;
        case NodeKind::Abstract: abstract(c); break;
        case NodeKind::KwdGroup: add(groups_.sorted, NodeRole::Keywords, c); break;
        case NodeKind::Permissions:
          for (const auto& p : c.children) {
            if (p.kind == NodeKind::Copyright) add(groups_.unsorted, NodeRole::Copyright, p);
            if (p.kind == NodeKind::License) add(groups_.unsorted, NodeRole::License, p);
          }
          break;
        default: other(c, "article-meta"); break;
      }
    }
  }

  void contrib_group(const XmlNode& node) {
    std::string names;
    auto append_name = [&](const std::string& name) {
      const std::string t = trim(name);
      if (t.empty()) return;
      if (!names.empty()) names += ", ";
      names += t;
    };
    std::vector<const XmlNode*> affs;
    for (const auto& c : node.children) {
      if (c.kind == NodeKind::Contrib) {
        const XmlNode* name = first_child(c, NodeKind::Name);
        if (name != nullptr) {
          append_name(flatten_text(*name));
        } else {
          std::string collab;
          for (const auto& part : c.children) {
            if (part.kind == NodeKind::Inline || part.kind == NodeKind::Text) {
              if (part.tag != "xref") collab += flatten_text(part);
            }
          }
          append_name(collab);
        }
        for (const auto& part : c.children) {
          if (part.kind == NodeKind::Aff) affs.push_back(&part);
        }
      } else if (c.kind == NodeKind::Aff) {
        affs.push_back(&c);
      }
    }
    if (auto g = make(NodeRole::Author, node, names)) groups_.unsorted.push_back(std::move(*g));
    for (const auto* aff : affs) add(groups_.unsorted, NodeRole::Affiliation, *aff);
  }

  void abstract(const XmlNode& node) {
    std::string label;
    for (const auto& c : node.children) {
      switch (c.kind) {
        case NodeKind::Label: label = flatten_text(c); break;
        case NodeKind::Title:
          add(groups_.sorted, NodeRole::SectionTitle, c, label + " " + flatten_text(c));
          label.clear();
          break;
        case NodeKind::Paragraph: add(groups_.sorted, NodeRole::Abstract, c); break;
        case NodeKind::Sec:
        case NodeKind::Container: abstract(c); break;
        default: other(c, "abstract"); break;
      }
    }
  }

  void section(const XmlNode& node, std::vector<GroupNode>& dest, NodeRole para_role) {
    std::string label;
    for (const auto& c : node.children) {
      switch (c.kind) {
        case NodeKind::Label: label = flatten_text(c); break;
        case NodeKind::Title:
          add(dest, NodeRole::SectionTitle, c, label + " " + flatten_text(c));
          label.clear();
          break;
        case NodeKind::Paragraph: add(dest, para_role, c); break;
        case NodeKind::Sec:
        case NodeKind::Container: section(c, dest, para_role); break;
        case NodeKind::App: section(c, groups_.sorted, NodeRole::Appendix); break;
        case NodeKind::Fn:
        case NodeKind::FnGroup: footnotes(c); break;
        case NodeKind::RefList: ref_list(c); break;
        case NodeKind::Ack: section(c, groups_.unsorted, NodeRole::Acknowledgment); break;
        default: other(c, node.tag); break;
      }
    }
  }

  void footnotes(const XmlNode& node) {
    if (node.kind == NodeKind::Fn) {
      add(groups_.unsorted, NodeRole::Footnote, node);
      return;
    }
    for (const auto& c : node.children) {
      if (c.kind == NodeKind::Fn) {
        add(groups_.unsorted, NodeRole::Footnote, c);
      } else if (c.kind == NodeKind::Title) {
        add(groups_.unsorted, NodeRole::SectionTitle, c);
      } else {
        other(c, "fn-group");
      }
    }
  }

  void ref_list(const XmlNode& node) {
    for (const auto& c : node.children) {
      switch (c.kind) {
        case NodeKind::Title: add(groups_.sorted, NodeRole::SectionTitle, c); break;
        case NodeKind::Ref: add(groups_.sorted, NodeRole::Reference, c); break;
        case NodeKind::RefList: ref_list(c); break;
        default: other(c, "ref-list"); break;
      }
    }
  }

  void back(const XmlNode& node) {
    for (const auto& c : node.children) {
      switch (c.kind) {
        case NodeKind::Ack: section(c, groups_.unsorted, NodeRole::Acknowledgment); break;
        case NodeKind::Glossary:
          for (const auto& g : c.children) {
            if (g.kind == NodeKind::Title) {
              add(groups_.unsorted, NodeRole::SectionTitle, g);
            } else if (g.kind != NodeKind::Text && g.kind != NodeKind::Metadata) {
              add(groups_.unsorted, NodeRole::Abbreviation, g);
            }
          }
          break;
        case NodeKind::AppGroup:
        case NodeKind::App: section(c, groups_.sorted, NodeRole::Appendix); break;
        case NodeKind::RefList: ref_list(c); break;
        case NodeKind::FnGroup:
        case NodeKind::Fn: footnotes(c); break;
        case NodeKind::Sec: section(c, groups_.sorted, NodeRole::Paragraph); break;
        default: other(c, "back"); break;
      }
    }
  }

  void floats(const XmlNode& node) {
    for (const auto& c : node.children) {
      if (is_float_kind(c.kind)) {
        float_node(c);
      } else {
        other(c, "floats-group");
      }
    }
  }

  void float_node(const XmlNode& node) {
    switch (node.kind) {
      case NodeKind::List: add(groups_.lists, NodeRole::List, node); break;
      case NodeKind::Fig: {
        FigureEntry fig;
        if (const auto* l = first_child(node, NodeKind::Label)) fig.label = make(NodeRole::FigureLabel, *l, flatten_text(*l));
        if (const auto* c = first_child(node, NodeKind::Caption)) fig.caption = make(NodeRole::FigureCaption, *c, flatten_text(*c));
        fig.body = GroupNode{next_id_++, NodeRole::FigureBody, node.path, {}};
        groups_.figures.push_back(std::move(fig));
        break;
      }
      case NodeKind::TableWrap: {
        TableEntry table;
        if (const auto* l = first_child(node, NodeKind::Label)) table.label = make(NodeRole::TableLabel, *l, flatten_text(*l));
        if (const auto* c = first_child(node, NodeKind::Caption)) table.caption = make(NodeRole::TableCaption, *c, flatten_text(*c));
        for (const auto& c : node.children) {
          if (c.kind != NodeKind::TableWrapFoot) continue;
          table_foot(c, table.footnotes);
        }
        table.body = GroupNode{next_id_++, NodeRole::TableBody, node.path, {}};
        groups_.tables.push_back(std::move(table));
        break;
      }
      default: break;
    }
  }

  void table_foot(const XmlNode& node, std::vector<GroupNode>& out) {
    for (const auto& c : node.children) {
      switch (c.kind) {
        case NodeKind::Fn:
        case NodeKind::Paragraph:
        case NodeKind::Title:
          if (auto g = make(NodeRole::TableFootnote, c, flatten_text(c))) out.push_back(std::move(*g));
          break;
        case NodeKind::FnGroup:
        case NodeKind::Container: table_foot(c, out); break;
        default: break;
      }
    }
  }

  NodeGroups groups_;
  int next_id_ = 0;
};

XmlNode prune_node(const XmlNode& node, const RemovalSet& removal) {
  XmlNode out;
  out.kind = node.kind;
  out.tag = node.tag;
  out.path = node.path;
  out.data = node.data;
  out.attributes = node.attributes;
  for (const auto& c : node.children) {
    if (c.kind != NodeKind::Text && removal.matches(node.tag, c.tag)) continue;
    out.children.push_back(prune_node(c, removal));
  }
  return out;
}

void extract_floats(XmlNode& node, std::vector<XmlNode>& floats) {
  std::vector<XmlNode> kept;
  kept.reserve(node.children.size());
  for (auto& c : node.children) {
    if (is_float_kind(c.kind)) {
      floats.push_back(std::move(c));
    } else {
      extract_floats(c, floats);
      kept.push_back(std::move(c));
    }
  }
  node.children = std::move(kept);
}

}  // namespace

// ---------------------------------------------------------------------------

std::string_view to_string(NodeKind kind) noexcept {
  for (const auto& k : kKindNames) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::optional<NodeKind> parse_node_kind(std::string_view name) noexcept {
  for (const auto& k : kKindNames) {
    if (k.name == name) return k.kind;
  }
  return std::nullopt;
}

std::string_view to_string(NodeRole role) noexcept {
  for (const auto& r : kRoleNames) {
    if (r.role == role) return r.name;
  }
  return "paragraph";
}

std::optional<NodeRole> parse_node_role(std::string_view name) noexcept {
  for (const auto& r : kRoleNames) {
    if (r.name == name) return r.role;
  }
  return std::nullopt;
}

LayoutCategory category_of(NodeRole role) noexcept {
  switch (role) {
    case NodeRole::ArticleTitle:
    case NodeRole::SectionTitle:
    case NodeRole::FigureLabel:
    case NodeRole::TableLabel:
      return LayoutCategory::Title;
    case NodeRole::List: return LayoutCategory::List;
    case NodeRole::TableBody: return LayoutCategory::Table;
    case NodeRole::FigureBody: return LayoutCategory::Figure;
    default: return LayoutCategory::Text;
  }
}

LayoutCategory category_of(std::string_view role_name) {
  const auto role = parse_node_role(role_name);
  if (!role) throw std::invalid_argument("unrecognized node role '" + std::string(role_name) + "'");
  return category_of(*role);
}

bool is_inline_candidate(NodeRole role) noexcept {
  return role == NodeRole::SectionTitle || role == NodeRole::FigureLabel ||
         role == NodeRole::TableLabel;
}

const std::string* XmlNode::attribute(std::string_view name) const {
  for (const auto& [k, v] : attributes) {
    if (k == name) return &v;
  }
  return nullptr;
}

std::string flatten_text(const XmlNode& node) {
  std::string out;
  flatten_into(node, out);
  return out;
}

KindTable KindTable::defaults() {
  KindTable t;
  const std::pair<const char*, NodeKind> table[] = {
      {"article", NodeKind::Article},
      {"front", NodeKind::Front},
      {"journal-meta", NodeKind::JournalMeta},
      {"journal-id", NodeKind::JournalId},
      {"article-meta", NodeKind::ArticleMeta},
      {"title-group", NodeKind::TitleGroup},
      {"article-title", NodeKind::ArticleTitle},
      {"contrib-group", NodeKind::ContribGroup},
      {"contrib", NodeKind::Contrib},
      {"name", NodeKind::Name},
      {"surname", NodeKind::Surname},
      {"given-names", NodeKind::GivenNames},
      {"aff", NodeKind::Aff},
      {"abstract", NodeKind::Abstract},
      {"trans-abstract", NodeKind::Abstract},
      {"kwd-group", NodeKind::KwdGroup},
      {"kwd", NodeKind::Kwd},
      {"permissions", NodeKind::Permissions},
      {"copyright-statement", NodeKind::Copyright},
      {"license", NodeKind::License},
      {"license-p", NodeKind::Paragraph},
      {"body", NodeKind::Body},
      {"sec", NodeKind::Sec},
      {"title", NodeKind::Title},
      {"p", NodeKind::Paragraph},
      {"list", NodeKind::List},
      {"list-item", NodeKind::ListItem},
      {"fig", NodeKind::Fig},
      {"fig-group", NodeKind::Fig},
      {"table-wrap", NodeKind::TableWrap},
      {"table-wrap-foot", NodeKind::TableWrapFoot},
      {"table", NodeKind::Table},
      {"caption", NodeKind::Caption},
      {"label", NodeKind::Label},
      {"fn", NodeKind::Fn},
      {"fn-group", NodeKind::FnGroup},
      {"back", NodeKind::Back},
      {"ack", NodeKind::Ack},
      {"glossary", NodeKind::Glossary},
      {"app-group", NodeKind::AppGroup},
      {"app", NodeKind::App},
      {"ref-list", NodeKind::RefList},
      {"ref", NodeKind::Ref},
      {"floats-group", NodeKind::FloatsGroup},
      {"tex-math", NodeKind::TexMath},
      {"disp-formula", NodeKind::DispFormula},
      {"inline-formula", NodeKind::InlineFormula},
      {"alternatives", NodeKind::Alternatives},
      {"graphic", NodeKind::Graphic},
      {"inline-graphic", NodeKind::Graphic},
      {"media", NodeKind::Graphic},
      {"edition", NodeKind::Edition},
      {"institution-id", NodeKind::InstitutionId},
  };
  for (const auto& [tag, kind] : table) t.set(tag, kind);

  for (const char* tag : {"italic", "bold", "sup", "sub", "sc", "underline", "monospace", "roman",
                          "sans-serif", "overline", "strike", "xref", "ext-link", "uri", "email",
                          "named-content", "styled-content", "abbrev", "break", "string-name",
                          "collab", "inline-supplementary-material", "target",
                          // affiliation parts
                          "addr-line", "country", "institution", "institution-wrap",
                          // citation parts
                          "source", "chapter-title", "publisher-loc", "publisher-name", "pub-id",
                          "etal", "comment", "year", "volume", "issue", "fpage", "lpage", "day",
                          "month", "season", "elocation-id"}) {
    t.set(tag, NodeKind::Inline);
  }
  for (const char* tag : {"boxed-text", "disp-quote", "statement", "def-list", "def-item", "term",
                          "def", "mixed-citation", "element-citation", "person-group",
                          "supplementary-material", "verse-group", "verse-line", "preformat",
                          "speech", "thead", "tbody", "tfoot", "tr", "td", "th", "col", "colgroup",
                          "array", "table-wrap-group", "attrib"}) {
    t.set(tag, NodeKind::Container);
  }
  for (const char* tag : {"article-id", "article-categories", "subj-group", "subject", "pub-date",
                          "history", "date", "counts", "fig-count", "table-count",
                          "equation-count", "ref-count", "page-count", "word-count", "self-uri",
                          "custom-meta-group", "custom-meta", "meta-name", "meta-value",
                          "funding-group", "award-group", "funding-source", "award-id",
                          "funding-statement", "journal-title-group", "journal-title",
                          "abbrev-journal-title", "issn", "isbn", "publisher", "author-notes",
                          "corresp", "related-article", "object-id", "contrib-id", "role",
                          "degrees", "notes", "processing-meta", "trans-title-group",
                          "article-version", "pub-history", "event", "copyright-year",
                          "copyright-holder", "conference", "product", "prefix", "suffix"}) {
    t.set(tag, NodeKind::Metadata);
  }
  return t;
}

void KindTable::set(std::string tag, NodeKind kind) { table_[std::move(tag)] = kind; }

NodeKind KindTable::kind_of(std::string_view tag) const {
  if (const auto it = table_.find(tag); it != table_.end()) return it->second;
  if (tag.starts_with("mml:")) return NodeKind::Inline;
  return NodeKind::Unknown;
}

void KindTable::load_overrides(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(std::string("kind table is not valid JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ParseError("kind table: expected an object of tag -> kind");
  for (const auto& [tag, value] : doc.items()) {
    if (!value.is_string()) throw ParseError("kind table: value for '" + tag + "' must be a string");
    const auto kind = parse_node_kind(value.get<std::string>());
    if (!kind) {
      throw ParseError("kind table: '" + value.get<std::string>() + "' (for '" + tag +
                       "') is not a node kind");
    }
    set(tag, *kind);
  }
}

void KindTable::load_overrides(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path.string());
  load_overrides(in);
}

Article parse_article(std::istream& source, const KindTable& kinds) {
  Builder builder;
  builder.kinds = &kinds;

  std::unique_ptr<std::remove_pointer_t<XML_Parser>, decltype(&XML_ParserFree)> parser(
      XML_ParserCreate("UTF-8"), &XML_ParserFree);
  if (!parser) throw std::runtime_error("cannot create XML parser");
  XML_SetUserData(parser.get(), &builder);
  XML_SetElementHandler(parser.get(), on_start, on_end);
  XML_SetCharacterDataHandler(parser.get(), on_text);
  XML_SetSkippedEntityHandler(parser.get(), on_skipped_entity);

  const std::string content{std::istreambuf_iterator<char>(source), std::istreambuf_iterator<char>()};
  if (XML_Parse(parser.get(), content.data(), static_cast<int>(content.size()), XML_TRUE) ==
      XML_STATUS_ERROR) {
    throw ParseError("malformed XML at line " +
                     std::to_string(XML_GetCurrentLineNumber(parser.get())) + ": " +
                     XML_ErrorString(XML_GetErrorCode(parser.get())));
  }
  if (!builder.root) throw ParseError("malformed XML: no root element");

  Article article;
  article.root = std::move(*builder.root);
  if (article.root.kind != NodeKind::Article) {
    throw ParseError("root element is <" + article.root.tag + ">, expected <article>");
  }
  article.journal_id = find_journal_id(article.root);
  if (article.journal_id.empty()) {
    throw ParseError("missing journal metadata: no journal-id under front/journal-meta");
  }
  std::vector<const XmlNode*> titles;
  collect(article.root, NodeKind::ArticleTitle, titles);
  article.has_article_title = std::any_of(titles.begin(), titles.end(), [](const XmlNode* t) {
    return !trim(flatten_text(*t)).empty();
  });
  return article;
}

Article parse_article(const std::filesystem::path& path, const KindTable& kinds) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open " + path.string());
  try {
    return parse_article(in, kinds);
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

RemovalSet RemovalSet::defaults() {
  return {{"tex-math", "edition", "institution-id", "disp-formula", "inline-formula/alternatives",
           "inline-graphic", "graphic"}};
}

bool RemovalSet::matches(std::string_view parent_tag, std::string_view tag) const {
  for (const auto& e : entries) {
    const auto slash = e.find('/');
    if (slash == std::string::npos) {
      if (e == tag) return true;
    } else if (std::string_view(e).substr(0, slash) == parent_tag &&
               std::string_view(e).substr(slash + 1) == tag) {
      return true;
    }
  }
  return false;
}

XmlNode prune(const XmlNode& tree, const RemovalSet& removal) { return prune_node(tree, removal); }

XmlNode restructure_floats(const XmlNode& tree) {
  XmlNode out = tree;
  std::vector<XmlNode> floats;
  extract_floats(out, floats);

  auto group = std::find_if(out.children.begin(), out.children.end(),
                            [](const XmlNode& c) { return c.kind == NodeKind::FloatsGroup; });
  if (group == out.children.end()) {
    if (floats.empty()) return out;
    XmlNode fresh;
    fresh.kind = NodeKind::FloatsGroup;
    fresh.tag = "floats-group";
    fresh.path = out.path + "/floats-group[1]";
    out.children.push_back(std::move(fresh));
    group = std::prev(out.children.end());
  }
  for (auto& f : floats) group->children.push_back(std::move(f));
  return out;
}

NodeGroups group_nodes(const XmlNode& restructured) { return Grouper{}.run(restructured); }

NodeGroups prepare_groups(const Article& article, const RemovalSet& removal) {
  return group_nodes(restructure_floats(prune(article.root, removal)));
}

}  // namespace layoutgt
