#include <cstdint>
#include <vector>

#include "terramesh/error.hpp"
#include "terramesh/formats.hpp"
#include "text_util.hpp"
#include "wedge.hpp"

namespace terramesh {

namespace {

constexpr std::string_view kVrmlHeader = "#VRML V2.0 utf8";

void append_string_literal(std::string& out, std::string_view s) {
  out += '"';
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
}

void append_index_list(std::string& out, const std::vector<Face>& faces) {
  out += "[ ";
  for (std::size_t f = 0; f < faces.size(); ++f) {
    if (f != 0) out += "\n      ";
    for (VertexId v : faces[f]) {
      detail::append_uint(out, v);
      out += ' ';
    }
    out += "-1";
  }
  out += " ]\n";
}

}  // namespace

std::string write_vrml(const TriMesh& mesh) {
  std::string out;
  out.reserve(64 + mesh.positions.size() * 40 + mesh.faces.size() * 40);
  out += kVrmlHeader;
  out += "\nShape {\n";
  if (mesh.texture_name) {
    out += "  appearance Appearance {\n    texture ImageTexture {\n      url [ ";
    append_string_literal(out, *mesh.texture_name);
    out += " ]\n    }\n  }\n";
  }
  out += "  geometry IndexedFaceSet {\n    coord Coordinate {\n      point [\n";
  for (const Vec3& p : mesh.positions) {
    out += "        ";
    detail::append_g6(out, p.x);
    out += ' ';
    detail::append_g6(out, p.y);
    out += ' ';
    detail::append_g6(out, p.z);
    out += ",\n";
  }
  out += "      ]\n    }\n    coordIndex ";
  append_index_list(out, mesh.faces);
  if (mesh.has_uvs()) {
    out += "    texCoord TextureCoordinate {\n      point [\n";
    for (const UV& uv : mesh.uvs) {
      out += "        ";
      detail::append_g6(out, uv.u);
      out += ' ';
      detail::append_g6(out, uv.v);
      out += ",\n";
    }
    out += "      ]\n    }\n    texCoordIndex ";
    append_index_list(out, mesh.faces);
  }
  out += "  }\n}\n";
  return out;
}

namespace {

enum class Tok { Word, String, LBracket, RBracket, LBrace, RBrace, End };

struct Token {
  Tok kind = Tok::End;
  std::string_view text;  // raw text; for strings, the contents between quotes
  std::size_t line = 0;
};

bool is_word_char(char c) {
  return !detail::is_space(c) && c != ',' && c != '[' && c != ']' && c != '{' && c != '}' && c != '"' &&
         c != '#';
}

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> tokens;
  std::size_t line = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      ++i;
    } else if (detail::is_space(c) || c == ',') {
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (c == '[' || c == ']' || c == '{' || c == '}') {
      const Tok kind = c == '[' ? Tok::LBracket : c == ']' ? Tok::RBracket : c == '{' ? Tok::LBrace : Tok::RBrace;
      tokens.push_back({kind, text.substr(i, 1), line});
      ++i;
    } else if (c == '"') {
      const std::size_t start_line = line;
      const std::size_t start = ++i;
      while (i < text.size() && text[i] != '"') {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        if (text[i] == '\n') ++line;
        ++i;
      }
      if (i >= text.size()) throw Error(Errc::Syntax, "unterminated string", start_line);
      tokens.push_back({Tok::String, text.substr(start, i - start), start_line});
      ++i;
    } else {
      const std::size_t start = i;
      while (i < text.size() && is_word_char(text[i])) ++i;
      tokens.push_back({Tok::Word, text.substr(start, i - start), line});
    }
  }
  tokens.push_back({Tok::End, {}, line});
  return tokens;
}

std::string unescape(std::string_view raw) {
  std::string out;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] == '\\' && i + 1 < raw.size()) ++i;
    out += raw[i];
  }
  return out;
}

struct IndexedFaceSet {
  std::vector<Vec3> points;
  std::vector<UV> texcoords;
  bool has_texcoord = false;
  std::vector<std::int64_t> coord_index;
  std::vector<std::int64_t> texcoord_index;
  std::size_t coord_index_line = 0;
  bool has_texcoord_index = false;
};

class VrmlParser {
 public:
  explicit VrmlParser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  TriMesh parse() {
    std::optional<IndexedFaceSet> ifs;
    std::optional<std::string> url;
    std::vector<Tok> open;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind == Tok::Word && peek(1).kind == Tok::LBrace) {
        if (!ifs && t.text == "IndexedFaceSet") {
          next();
          ifs = parse_ifs();
          continue;
        }
        if (!url && t.text == "ImageTexture") {
          next();
          url = parse_image_texture();
          continue;
        }
      }
      next();
      if (t.kind == Tok::LBrace || t.kind == Tok::LBracket) {
        open.push_back(t.kind);
      } else if (t.kind == Tok::RBrace || t.kind == Tok::RBracket) {
        const Tok expected = t.kind == Tok::RBrace ? Tok::LBrace : Tok::LBracket;
        if (open.empty() || open.back() != expected) throw Error(Errc::Syntax, "unbalanced " + std::string(t.text), t.line);
        open.pop_back();
      }
    }
    if (!open.empty()) throw Error(Errc::Syntax, "unclosed bracket at end of file", peek().line);
    if (!ifs) throw Error(Errc::NoIndexedFaceSet, "no IndexedFaceSet node found");

    TriMesh mesh = build(*ifs);
    mesh.texture_name = std::move(url);
    return mesh;
  }

 private:
  const Token& peek(std::size_t ahead = 0) const {
    return tokens_[std::min(pos_ + ahead, tokens_.size() - 1)];
  }
  const Token& next() {
    const Token& t = tokens_[pos_];
    if (pos_ + 1 < tokens_.size()) ++pos_;
    return t;
  }
  const Token& expect(Tok kind, const char* what) {
    if (peek().kind != kind) throw Error(Errc::Syntax, std::string("expected ") + what, peek().line);
    return next();
  }

  // Skips from an opening bracket/brace through its matching closer.
  void skip_balanced() {
    std::vector<Tok> open{next().kind};
    while (!open.empty()) {
      const Token& t = next();
      switch (t.kind) {
        case Tok::LBrace:
        case Tok::LBracket: open.push_back(t.kind); break;
        case Tok::RBrace:
        case Tok::RBracket: {
          const Tok expected = t.kind == Tok::RBrace ? Tok::LBrace : Tok::LBracket;
          if (open.back() != expected) throw Error(Errc::Syntax, "mismatched " + std::string(t.text), t.line);
          open.pop_back();
          break;
        }
        case Tok::End: throw Error(Errc::Syntax, "unexpected end of file inside a block", t.line);
        default: break;
      }
    }
  }

  // Skips a field value of unknown type.
  void skip_value() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::LBracket: skip_balanced(); return;
      case Tok::String: next(); return;
      case Tok::Word:
        if (t.text == "DEF") {
          next();
          expect(Tok::Word, "DEF name");
          skip_value();
          return;
        }
        if (t.text == "USE") {
          next();
          expect(Tok::Word, "USE name");
          return;
        }
        if (peek(1).kind == Tok::LBrace) {
          next();
          skip_balanced();
          return;
        }
        if (detail::parse_double(t.text)) {
          while (peek().kind == Tok::Word && detail::parse_double(peek().text)) next();
          return;
        }
        next();
        return;
      default: throw Error(Errc::Syntax, "missing field value", t.line);
    }
  }

  // Field loop of a node body; `handler` returns false for fields it does
  // not consume.
  template <typename Handler>
  void parse_body(Handler&& handler) {
    expect(Tok::LBrace, "'{'");
    while (peek().kind != Tok::RBrace) {
      const Token& field = peek();
      if (field.kind != Tok::Word) throw Error(Errc::Syntax, "expected field name", field.line);
      next();
      if (!handler(field.text)) skip_value();
    }
    next();
  }

  std::optional<std::string> parse_image_texture() {
    std::optional<std::string> url;
    parse_body([&](std::string_view field) {
      if (field != "url") return false;
      if (peek().kind == Tok::String) {
        url = unescape(next().text);
      } else if (peek().kind == Tok::LBracket) {
        next();
        while (peek().kind == Tok::String) {
          std::string s = unescape(next().text);
          if (!url) url = std::move(s);
        }
        expect(Tok::RBracket, "']' after url strings");
      } else {
        throw Error(Errc::Syntax, "url must be a string or string list", peek().line);
      }
      return true;
    });
    return url;
  }

  std::vector<double> parse_numbers() {
    std::vector<double> values;
    auto take = [&] {
      const Token& t = next();
      const auto v = detail::parse_double(t.text);
      if (!v) throw Error(Errc::Syntax, "expected number, got " + detail::quote_token(t.text), t.line);
      values.push_back(*v);
    };
    if (peek().kind == Tok::LBracket) {
      next();
      while (peek().kind == Tok::Word) take();
      expect(Tok::RBracket, "']' after number list");
    } else {
      while (peek().kind == Tok::Word && detail::parse_double(peek().text)) take();
    }
    return values;
  }

  // [DEF name] <node_type> { point [...] } ; returns the flat number list.
  std::optional<std::vector<double>> parse_point_node(std::string_view node_type, std::size_t arity) {
    if (peek().kind == Tok::Word && peek().text == "DEF") {
      next();
      expect(Tok::Word, "DEF name");
    }
    if (peek().kind == Tok::Word && (peek().text == "USE" || peek().text == "NULL")) {
      skip_value();
      return std::nullopt;
    }
    const Token& type = expect(Tok::Word, "node type");
    if (type.text != node_type) {
      throw Error(Errc::Syntax, "expected " + std::string(node_type) + ", got " + detail::quote_token(type.text),
                  type.line);
    }
    std::vector<double> values;
    std::size_t line = type.line;
    parse_body([&](std::string_view field) {
      if (field != "point") return false;
      line = peek().line;
      values = parse_numbers();
      return true;
    });
    if (values.size() % arity != 0) {
      throw Error(Errc::Syntax, std::string(node_type) + " point count is not a multiple of " + std::to_string(arity),
                  line);
    }
    return values;
  }

  std::vector<std::int64_t> parse_indices() {
    std::vector<std::int64_t> values;
    auto take = [&] {
      const Token& t = next();
      const auto v = detail::parse_integer(t.text);
      if (!v) throw Error(Errc::Syntax, "expected integer index, got " + detail::quote_token(t.text), t.line);
      if (*v < -1) throw Error(Errc::MalformedFaceToken, "negative index " + detail::quote_token(t.text), t.line);
      values.push_back(*v);
    };
    if (peek().kind == Tok::LBracket) {
      next();
      while (peek().kind == Tok::Word) take();
      expect(Tok::RBracket, "']' after index list");
    } else if (peek().kind == Tok::Word) {
      take();
    } else {
      throw Error(Errc::Syntax, "expected index list", peek().line);
    }
    return values;
  }

  IndexedFaceSet parse_ifs() {
    IndexedFaceSet ifs;
    parse_body([&](std::string_view field) {
      if (field == "coord") {
        if (auto v = parse_point_node("Coordinate", 3)) {
          for (std::size_t i = 0; i < v->size(); i += 3) ifs.points.push_back({(*v)[i], (*v)[i + 1], (*v)[i + 2]});
        }
      } else if (field == "texCoord") {
        if (auto v = parse_point_node("TextureCoordinate", 2)) {
          ifs.has_texcoord = true;
          for (std::size_t i = 0; i < v->size(); i += 2) ifs.texcoords.push_back({(*v)[i], (*v)[i + 1]});
        }
      } else if (field == "coordIndex") {
        ifs.coord_index_line = peek().line;
        ifs.coord_index = parse_indices();
      } else if (field == "texCoordIndex") {
        ifs.has_texcoord_index = true;
        ifs.texcoord_index = parse_indices();
      } else {
        return false;
      }
      return true;
    });
    return ifs;
  }

  static TriMesh build(const IndexedFaceSet& ifs) {
    const std::size_t line = ifs.coord_index_line;
    const bool textured = ifs.has_texcoord;
    const std::vector<std::int64_t>& tex_index = ifs.has_texcoord_index ? ifs.texcoord_index : ifs.coord_index;
    if (textured && tex_index.size() != ifs.coord_index.size()) {
      throw Error(Errc::Syntax, "texCoordIndex does not match coordIndex", line);
    }

    std::vector<std::vector<detail::Corner>> polygons;
    std::vector<detail::Corner> current;
    auto close_polygon = [&](bool terminated) {
      if (current.empty()) return;
      if (current.size() < 3) {
        throw Error(terminated ? Errc::MalformedFaceToken : Errc::UnterminatedFace,
                    "face with fewer than 3 indices", line);
      }
      polygons.push_back(std::move(current));
      current.clear();
    };
    for (std::size_t i = 0; i < ifs.coord_index.size(); ++i) {
      const std::int64_t v = ifs.coord_index[i];
      if (textured && (tex_index[i] == -1) != (v == -1)) {
        throw Error(Errc::Syntax, "texCoordIndex face structure differs from coordIndex", line);
      }
      if (v == -1) {
        close_polygon(true);
        continue;
      }
      if (static_cast<std::uint64_t>(v) >= ifs.points.size()) {
        throw Error(Errc::IndexOutOfRange, "coordIndex " + std::to_string(v) + " with " +
                                               std::to_string(ifs.points.size()) + " points", line);
      }
      detail::Corner corner{static_cast<VertexId>(v), std::nullopt};
      if (textured) {
        const std::int64_t t = tex_index[i];
        if (static_cast<std::uint64_t>(t) >= ifs.texcoords.size()) {
          throw Error(Errc::IndexOutOfRange, "texCoordIndex " + std::to_string(t) + " with " +
                                                 std::to_string(ifs.texcoords.size()) + " texture points", line);
        }
        corner.texcoord = static_cast<std::uint32_t>(t);
      }
      current.push_back(corner);
    }
    close_polygon(false);

    detail::WedgeResolver resolver(ifs.points, ifs.texcoords, textured);
    std::vector<Face> faces;
    for (const auto& polygon : polygons) {
      for (std::size_t k = 1; k + 1 < polygon.size(); ++k) {
        const VertexId a = polygon[0].vertex, b = polygon[k].vertex, c = polygon[k + 1].vertex;
        if (a == b || b == c || a == c) throw Error(Errc::MalformedFaceToken, "face repeats a vertex index", line);
      }
      std::vector<VertexId> ids;
      for (const auto& corner : polygon) ids.push_back(resolver.resolve(corner));
      for (std::size_t k = 1; k + 1 < ids.size(); ++k) faces.push_back({ids[0], ids[k], ids[k + 1]});
    }
    return std::move(resolver).finish(std::move(faces));
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
};

}  // namespace

TriMesh read_vrml(std::string_view text) {
  const std::size_t eol = text.find('\n');
  std::string_view first_line = text.substr(0, eol);
  if (!first_line.empty() && first_line.back() == '\r') first_line.remove_suffix(1);
  if (first_line.substr(0, kVrmlHeader.size()) != kVrmlHeader ||
      (first_line.size() > kVrmlHeader.size() && !detail::is_space(first_line[kVrmlHeader.size()]))) {
    throw Error(Errc::BadHeader, "first line must be '" + std::string(kVrmlHeader) + "'", 1);
  }
  return VrmlParser(tokenize(text)).parse();
}

}  // namespace terramesh
