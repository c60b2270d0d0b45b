#include "arboreal/system.hpp"

#include <cctype>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace arboreal {

  ParseError::ParseError(std::string const& msg,
                         std::size_t        line,
                         std::size_t        column)
      : std::runtime_error("line " + std::to_string(line) + ", column "
                           + std::to_string(column) + ": " + msg),
        line_(line),
        column_(column) {}

  namespace {

    bool ident_start(char c) {
      return std::isalpha(static_cast<unsigned char>(c)) != 0;
    }
    bool ident_char(char c) {
      return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
    }

    struct Cursor {
      std::string_view text;
      std::size_t      line;
      std::size_t      pos = 0;

      [[noreturn]] void fail(std::string const& msg) const {
        throw ParseError(msg, line, pos + 1);
      }
      [[noreturn]] void fail_at(std::string const& msg, std::size_t at) const {
        throw ParseError(msg, line, at + 1);
      }
      void skip() {
        while (pos < text.size() && (text[pos] == ' ' || text[pos] == '\t' || text[pos] == '\r')) {
          ++pos;
        }
      }
      bool done() {
        skip();
        return pos >= text.size();
      }
      bool peek(char c) {
        skip();
        return pos < text.size() && text[pos] == c;
      }
      void expect(char c) {
        if (!peek(c)) {
          fail(std::string("expected '") + c + "'");
        }
        ++pos;
      }
      std::string ident() {
        skip();
        if (pos >= text.size() || !ident_start(text[pos])) {
          fail("expected a name");
        }
        std::size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) {
          ++pos;
        }
        return std::string(text.substr(start, pos - start));
      }
      std::size_t integer() {
        skip();
        if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos]))) {
          fail("expected a number");
        }
        std::size_t v = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
          v = v * 10 + static_cast<std::size_t>(text[pos] - '0');
          if (v > 1000000) {
            fail("number too large");
          }
          ++pos;
        }
        return v;
      }
    };

    struct RawFactor {
      std::string name;
      bool        inverse;
      std::size_t column;
    };
    using RawWord = std::vector<RawFactor>;

    RawWord parse_raw_word(Cursor& c) {
      RawWord w;
      while (true) {
        c.skip();
        std::size_t at   = c.pos;
        std::string name = c.ident();
        bool        inv  = false;
        if (c.peek('^')) {
          ++c.pos;
          c.expect('-');
          if (c.integer() != 1) {
            c.fail("only the exponent ^-1 is allowed");
          }
          inv = true;
        }
        if (name != "e") {
          w.push_back({name, inv, at});
        }
        if (!c.peek('*')) {
          return w;
        }
        ++c.pos;
      }
    }

    std::string_view strip_comment(std::string_view line) {
      auto hash = line.find('#');
      return hash == std::string_view::npos ? line : line.substr(0, hash);
    }

    Word resolve_raw(RawWord const&                                      raw,
                     std::unordered_map<std::string, SymbolId> const& ids,
                     Cursor const&                                      c) {
      Word w;
      for (auto const& f : raw) {
        auto it = ids.find(f.name);
        if (it == ids.end()) {
          c.fail_at("unknown symbol '" + f.name + "'", f.column);
        }
        w.push_back(Atom::sym(it->second, f.inverse));
      }
      return w;
    }

  }  // namespace

  FRSystem::FRSystem(std::shared_ptr<Store> store, std::vector<SymbolId> symbols)
      : store_(std::move(store)), symbols_(std::move(symbols)) {}

  std::vector<std::string> FRSystem::names() const {
    std::vector<std::string> out;
    for (auto s : symbols_) {
      out.push_back(store_->symbol(s).name);
    }
    return out;
  }

  std::optional<SymbolId> FRSystem::find(std::string_view name) const {
    for (auto s : symbols_) {
      if (store_->symbol(s).name == name) {
        return s;
      }
    }
    return std::nullopt;
  }

  Element FRSystem::element(std::string_view name) const {
    auto s = find(name);
    if (!s) {
      throw std::invalid_argument("unknown symbol '" + std::string(name) + "'");
    }
    return Element::from_symbol(store_, *s);
  }

  Element FRSystem::element(std::size_t i) const {
    return Element::from_symbol(store_, symbols_.at(i));
  }

  Element FRSystem::parse_word(std::string_view text) const {
    Cursor c{text, 1};
    c.skip();
    RawWord raw = parse_raw_word(c);
    if (!c.done()) {
      c.fail("unexpected trailing input");
    }
    std::unordered_map<std::string, SymbolId> ids;
    for (auto s : symbols_) {
      ids.emplace(store_->symbol(s).name, s);
    }
    return Element(store_, resolve_raw(raw, ids, c));
  }

  void FRSystem::resolve_all(std::size_t cap) const {
    for (auto s : symbols_) {
      store_->resolve({Atom::sym(s)}, cap);
    }
  }

  FRSystem parse_system(std::string_view text, std::shared_ptr<Store> const& given) {
    struct RawDef {
      std::string          name;
      std::size_t          name_col;
      std::vector<RawWord> sections;
      Perm                 perm;
      Cursor               cursor;
    };
    std::size_t         degree = 0;
    std::vector<RawDef> defs;
    std::size_t         line_no = 0;
    std::size_t         start   = 0;
    while (start <= text.size()) {
      auto end = text.find('\n', start);
      if (end == std::string_view::npos) {
        end = text.size();
      }
      ++line_no;
      Cursor c{strip_comment(text.substr(start, end - start)), line_no};
      start = end + 1;
      if (c.done()) {
        continue;
      }
      if (degree == 0) {
        if (c.ident() != "alphabet") {
          c.fail_at("expected 'alphabet <d>'", 0);
        }
        std::size_t at = (c.skip(), c.pos);
        degree         = c.integer();
        if (degree < 2) {
          c.fail_at("alphabet degree must be at least 2", at);
        }
        if (degree > 64) {
          c.fail_at("alphabet degree too large", at);
        }
        if (given && given->degree() != degree) {
          c.fail_at("alphabet degree differs from the target store", at);
        }
        if (!c.done()) {
          c.fail("unexpected trailing input");
        }
        continue;
      }
      RawDef d{"", 0, {}, Perm::identity(degree), c};
      c.skip();
      d.name_col = c.pos;
      d.name     = c.ident();
      if (d.name == "e") {
        c.fail_at("'e' is reserved for the identity", d.name_col);
      }
      c.expect('=');
      c.expect('(');
      while (true) {
        d.sections.push_back(parse_raw_word(c));
        if (c.peek(',')) {
          ++c.pos;
          continue;
        }
        break;
      }
      if (d.sections.size() != degree) {
        c.fail("expected " + std::to_string(degree) + " sections, found "
               + std::to_string(d.sections.size()));
      }
      c.expect(')');
      if (c.peek('[')) {
        std::size_t at = c.pos;
        ++c.pos;
        std::vector<Letter> images;
        while (!c.peek(']')) {
          if (c.done()) {
            c.fail("unterminated permutation");
          }
          images.push_back(static_cast<Letter>(c.integer()));
        }
        ++c.pos;
        if (images.size() != degree) {
          c.fail_at("permutation must list " + std::to_string(degree) + " images", at);
        }
        try {
          d.perm = Perm(images);
        } catch (std::invalid_argument const&) {
          c.fail_at("permutation is not a bijection", at);
        }
      }
      if (!c.done()) {
        c.fail("unexpected trailing input");
      }
      d.cursor = c;
      defs.push_back(std::move(d));
    }
    if (degree == 0) {
      throw ParseError("missing 'alphabet <d>' line", line_no == 0 ? 1 : line_no, 1);
    }

    std::unordered_map<std::string, SymbolId> ids;
    for (auto const& d : defs) {
      if (ids.count(d.name) != 0) {
        d.cursor.fail_at("duplicate symbol '" + d.name + "'", d.name_col);
      }
      ids.emplace(d.name, 0);
    }
    auto store = given ? given : Store::make(degree);
    std::vector<SymbolId> symbols;
    for (auto const& d : defs) {
      ids[d.name] = store->declare_symbol(d.name);
      symbols.push_back(ids[d.name]);
    }
    for (std::size_t i = 0; i < defs.size(); ++i) {
      std::vector<Word> sections;
      for (auto const& raw : defs[i].sections) {
        sections.push_back(resolve_raw(raw, ids, defs[i].cursor));
      }
      store->define_symbol(symbols[i], defs[i].perm, std::move(sections));
    }
    FRSystem sys(store, std::move(symbols));
    sys.resolve_all();
    return sys;
  }

  NodeNames node_names(FRSystem const& sys) {
    NodeNames names;
    names[kIdentity] = "e";
    auto& store      = *sys.store();
    for (auto s : sys.symbols()) {
      auto sym = store.symbol(s);
      if (sym.node) {
        names.emplace(*sym.node, sym.name);
      }
    }
    for (auto s : sys.symbols()) {
      auto sym = store.symbol(s);
      if (sym.node) {
        names.emplace(store.invert(*sym.node), sym.name + "^-1");
      }
    }
    // Small powers, spelled as products.
    for (auto s : sys.symbols()) {
      auto sym = store.symbol(s);
      if (!sym.node) {
        continue;
      }
      for (std::int64_t sign : {1, -1}) {
        std::string unit = sign > 0 ? sym.name : sym.name + "^-1";
        std::string word = unit;
        for (std::int64_t k = 2; k <= 3; ++k) {
          word += "*" + unit;
          names.emplace(store.power(*sym.node, sign * k), word);
        }
      }
    }
    return names;
  }

  std::string word_string(Store const& store, Word const& w, NodeNames const& names) {
    std::string out;
    for (auto const& a : w) {
      if (!a.symbol && a.id == kIdentity) {
        continue;
      }
      if (!out.empty()) {
        out += '*';
      }
      if (a.symbol) {
        out += store.symbol(a.id).name;
        if (a.inverse) {
          out += "^-1";
        }
      } else if (auto it = names.find(a.id); it != names.end()) {
        out += it->second;
      } else {
        out += "#" + std::to_string(a.id);
      }
    }
    return out.empty() ? "e" : out;
  }

  std::string print_definitions(FRSystem const&    sys,
                                NodeNames const&   given,
                                std::string const& aux_prefix) {
    auto&              store = *sys.store();
    NodeNames          names = given;
    names[kIdentity]         = "e";
    std::deque<NodeId> aux;
    std::size_t        next_aux = 0;
    auto name_node = [&](NodeId n) {
      auto it = names.find(n);
      if (it != names.end()) {
        return it->second;
      }
      std::string nm = aux_prefix + std::to_string(next_aux++);
      names.emplace(n, nm);
      aux.push_back(n);
      return nm;
    };
    auto render = [&](Word const& w) {
      std::string out;
      for (auto const& a : w) {
        if (!a.symbol && a.id == kIdentity) {
          continue;
        }
        if (!out.empty()) {
          out += '*';
        }
        if (a.symbol) {
          out += store.symbol(a.id).name;
          if (a.inverse) {
            out += "^-1";
          }
        } else {
          out += name_node(a.id);
        }
      }
      return out.empty() ? std::string("e") : out;
    };
    auto line = [&](std::string const& name, Perm const& p,
                    std::vector<std::string> const& secs) {
      std::string s = name + " = (";
      for (std::size_t x = 0; x < secs.size(); ++x) {
        s += (x == 0 ? "" : ", ") + secs[x];
      }
      s += ")";
      if (!p.is_identity()) {
        s += " " + p.str();
      }
      return s + "\n";
    };

    std::string out;
    for (auto s : sys.symbols()) {
      auto                     sym = store.symbol(s);
      std::vector<std::string> secs;
      for (auto const& w : sym.sections) {
        secs.push_back(render(w));
      }
      out += line(sym.name, sym.perm, secs);
    }
    while (!aux.empty()) {
      NodeId n = aux.front();
      aux.pop_front();
      std::vector<std::string> secs;
      for (auto c : store.node_children(n)) {
        secs.push_back(name_node(c));
      }
      out += line(names.at(n), store.node_perm(n), secs);
    }
    return out;
  }

  FRSystem node_system(std::shared_ptr<Store> const& store, NodeId n,
                       std::string const& name) {
    auto              id = store->declare_symbol(name);
    std::vector<Word> sections;
    for (auto c : store->node_children(n)) {
      sections.push_back({Atom::node(c)});
    }
    store->define_symbol(id, store->node_perm(n), std::move(sections));
    FRSystem sys(store, {id});
    sys.resolve_all();
    return sys;
  }

  std::string print_system(FRSystem const& sys) {
    return "alphabet " + std::to_string(sys.degree()) + "\n" + print_definitions(sys);
  }

}  // namespace arboreal
