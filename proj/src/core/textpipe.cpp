#include "fieldscope/textpipe.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "fieldscope/delimited.hpp"
#include "fieldscope/error.hpp"
#include "fieldscope/io.hpp"
#include "resources.hpp"
#include "toml.hpp"
#include "utf8.hpp"

namespace fieldscope {

ContractionTable parse_contractions(std::istream& in) {
  ContractionTable table;
  std::string line;
  while (delimited::read_line(in, line)) {
    if (delimited::is_comment_or_blank(line)) continue;
    auto sep = line.find_first_of("\t,");
    if (sep == std::string::npos) fail(ErrorCategory::parse, "contraction row without separator: " + line);
    auto key = delimited::trim(std::string_view(line).substr(0, sep));
    auto value = delimited::trim(std::string_view(line).substr(sep + 1));
    table[lowercase(key)] = lowercase(value);
  }
  return table;
}

ContractionTable default_contractions() {
  std::istringstream in{std::string(resources::contractions_en)};
  return parse_contractions(in);
}

std::unordered_set<std::string> parse_stopwords(std::istream& in) {
  std::unordered_set<std::string> words;
  std::string line;
  while (delimited::read_line(in, line)) {
    auto w = delimited::trim(line);
    if (w.empty() || w.front() == '#') continue;
    words.insert(lowercase(w));
  }
  return words;
}

std::unordered_set<std::string> default_stopwords() {
  std::istringstream in{std::string(resources::stopwords_en)};
  return parse_stopwords(in);
}

PipelineConfig::PipelineConfig()
    : stopwords(default_stopwords()), contractions(default_contractions()) {
  set_lemmatizer("suffix");
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  std::string text = io::read_file(path);
  toml::table doc;
  try {
    doc = toml::parse(text, path.string());
  } catch (const toml::parse_error& e) {
    fail(ErrorCategory::parse, "pipeline config " + path.string() + ": " + std::string(e.description()));
  }
  auto resolve = [&](std::string_view p) {
    std::filesystem::path q(p);
    return q.is_relative() ? path.parent_path() / q : q;
  };
  PipelineConfig cfg;
  if (auto p = doc["stopwords"].value<std::string>()) {
    auto in = io::open_input(resolve(*p));
    cfg.stopwords = parse_stopwords(in);
  }
  if (auto p = doc["contractions"].value<std::string>()) {
    auto in = io::open_input(resolve(*p));
    cfg.contractions = parse_contractions(in);
  }
  if (auto name = doc["lemmatizer"].value<std::string>()) cfg.set_lemmatizer(*name);
  if (auto keep = doc["keep_hyphens"].value<bool>()) cfg.keep_hyphens = *keep;
  if (auto* arr = doc["copyright_patterns"].as_array()) {
    std::vector<std::string> patterns;
    for (const auto& el : *arr) {
      auto s = el.value<std::string>();
      if (!s) fail(ErrorCategory::parse, "copyright_patterns must hold strings");
      patterns.push_back(*s);
    }
    cfg.set_copyright_patterns(std::move(patterns));
  }
  for (const auto& [key, value] : doc) {
    static const std::unordered_set<std::string_view> known = {
        "stopwords", "contractions", "lemmatizer", "keep_hyphens", "copyright_patterns"};
    if (!known.count(key.str())) {
      fail(ErrorCategory::parse, "unknown pipeline config key '" + std::string(key.str()) + "'");
    }
  }
  return cfg;
}

void PipelineConfig::set_copyright_patterns(std::vector<std::string> patterns) {
  std::vector<std::regex> compiled;
  for (const auto& p : patterns) {
    try {
      compiled.emplace_back(p, std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    } catch (const std::regex_error& e) {
      fail(ErrorCategory::invalid_argument, "bad copyright pattern '" + p + "': " + e.what());
    }
  }
  pattern_text_ = std::move(patterns);
  patterns_ = std::move(compiled);
}

void PipelineConfig::set_lemmatizer(std::string_view name) {
  lemmatizer_ = make_lemmatizer(name);
  lemmatizer_name_ = std::string(name);
}

std::string PipelineConfig::fingerprint() const {
  std::vector<std::string> stop(stopwords.begin(), stopwords.end());
  std::sort(stop.begin(), stop.end());
  std::vector<std::pair<std::string, std::string>> con(contractions.begin(), contractions.end());
  std::sort(con.begin(), con.end());
  std::string blob = "lemmatizer=" + lemmatizer_name_ + "\nkeep_hyphens=" + (keep_hyphens ? "1" : "0");
  for (const auto& p : pattern_text_) blob += "\npattern=" + p;
  for (const auto& w : stop) blob += "\nstop=" + w;
  for (const auto& [k, v] : con) blob += "\ncontraction=" + k + "\t" + v;
  return io::sha256_hex(blob);
}

std::string strip_copyright(std::string_view abstract, const PipelineConfig& cfg) {
  std::size_t cut = abstract.size();
  for (const auto& re : cfg.copyright_regexes()) {
    std::match_results<std::string_view::const_iterator> m;
    if (std::regex_search(abstract.begin(), abstract.end(), m, re)) {
      cut = std::min(cut, static_cast<std::size_t>(m.position(0)));
    }
  }
  return std::string(abstract.substr(0, cut));
}

namespace {

char32_t lower_cp(char32_t cp) {
  if (cp < 0x80) return (cp >= 'A' && cp <= 'Z') ? cp + 32 : cp;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x17F) {
    if (cp == 0x130) return 'i';
    if (cp == 0x178) return 0xFF;
    bool odd_upper = (cp >= 0x139 && cp <= 0x148) || (cp >= 0x179 && cp <= 0x17E);
    if (odd_upper) return (cp % 2 == 1) ? cp + 1 : cp;
    if (cp == 0x138 || cp == 0x149 || cp == 0x17F) return cp;
    return (cp % 2 == 0) ? cp + 1 : cp;
  }
  if (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) return cp + 0x20;
  if (cp >= 0x410 && cp <= 0x42F) return cp + 0x20;
  if (cp >= 0x400 && cp <= 0x40F) return cp + 0x50;
  if (cp == 0x2018 || cp == 0x2019) return '\'';
  return cp;
}

bool is_word_or_apostrophe(char32_t cp) {
  return cp == '\'' || utf8::classify(cp) == utf8::CharClass::word;
}

bool has_word_char(std::string_view token) {
  for (std::size_t k = 0; k < token.size();) {
    auto d = utf8::decode(token, k);
    if (utf8::classify(d.cp) == utf8::CharClass::word) return true;
    k += d.len;
  }
  return false;
}

// Drops leading and trailing symbols (hyphens stay) so that sentence
// punctuation does not reach the lemmatizer.
std::string_view peel(std::string_view token) {
  std::size_t b = 0;
  while (b < token.size()) {
    auto d = utf8::decode(token, b);
    if (utf8::classify(d.cp) != utf8::CharClass::symbol) break;
    b += d.len;
  }
  std::size_t e = token.size();
  while (e > b) {
    std::size_t start = e - 1;
    while (start > b && (static_cast<unsigned char>(token[start]) & 0xC0) == 0x80) --start;
    auto d = utf8::decode(token, start);
    if (utf8::classify(d.cp) != utf8::CharClass::symbol) break;
    e = start;
  }
  return token.substr(b, e - b);
}

std::string_view trim_hyphens(std::string_view t) {
  while (!t.empty() && t.front() == '-') t.remove_prefix(1);
  while (!t.empty() && t.back() == '-') t.remove_suffix(1);
  return t;
}

bool has_symbol(std::string_view token, bool keep_hyphens) {
  for (std::size_t k = 0; k < token.size();) {
    auto d = utf8::decode(token, k);
    auto c = utf8::classify(d.cp);
    if (c == utf8::CharClass::symbol || (c == utf8::CharClass::hyphen && !keep_hyphens)) return true;
    k += d.len;
  }
  return false;
}

}  // namespace

std::string lowercase(std::string_view text) {
  std::string out;
  out.reserve(text.size());
  for (std::size_t k = 0; k < text.size();) {
    auto c = static_cast<unsigned char>(text[k]);
    if (c < 0x80) {
      out += static_cast<char>(c >= 'A' && c <= 'Z' ? c + 32 : c);
      ++k;
      continue;
    }
    auto d = utf8::decode(text, k);
    if (d.cp == 0xFFFD && d.len == 1) {
      out += text[k];
    } else {
      utf8::append(out, lower_cp(d.cp));
    }
    k += d.len;
  }
  return out;
}

std::string expand_contractions(std::string_view text, const ContractionTable& table) {
  std::string out;
  out.reserve(text.size() + 16);
  std::size_t k = 0;
  while (k < text.size()) {
    auto d = utf8::decode(text, k);
    if (!is_word_or_apostrophe(d.cp)) {
      out.append(text.substr(k, d.len));
      k += d.len;
      continue;
    }
    std::size_t end = k;
    while (end < text.size()) {
      auto e = utf8::decode(text, end);
      if (!is_word_or_apostrophe(e.cp)) break;
      end += e.len;
    }
    std::string_view run = text.substr(k, end - k);
    std::size_t lead = run.find_first_not_of('\'');
    if (lead == std::string_view::npos) {
      out.append(run);
      k = end;
      continue;
    }
    std::size_t tail = run.find_last_not_of('\'');
    std::string_view core = run.substr(lead, tail - lead + 1);
    auto it = table.find(std::string(core));
    if (it == table.end()) {
      out.append(run);
    } else {
      out.append(run.substr(0, lead));
      out.append(it->second);
      out.append(run.substr(tail + 1));
    }
    k = end;
  }
  return out;
}

std::string expand_contractions(std::string_view text) {
  static const ContractionTable table = default_contractions();
  return expand_contractions(text, table);
}

std::vector<std::string> split_symbols(std::string_view token, bool keep_hyphens) {
  std::vector<std::string> pieces;
  std::string cur;
  for (std::size_t k = 0; k < token.size();) {
    auto d = utf8::decode(token, k);
    auto c = utf8::classify(d.cp);
    bool split = c == utf8::CharClass::symbol || (c == utf8::CharClass::hyphen && !keep_hyphens);
    if (split) {
      if (!cur.empty()) pieces.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.append(token.substr(k, d.len));
    }
    k += d.len;
  }
  if (!cur.empty()) pieces.push_back(std::move(cur));
  return pieces;
}

bool is_number(std::string_view t) {
  bool digit = false;
  bool exponent = false;
  for (std::size_t k = 0; k < t.size(); ++k) {
    char c = t[k];
    if (c >= '0' && c <= '9') {
      digit = true;
    } else if (c == 'e' || c == 'E') {
      // exponent marker: digit before, optional sign, digit after
      if (exponent || !digit) return false;
      std::size_t n = k + 1;
      if (n < t.size() && (t[n] == '-' || t[n] == '+')) ++n;
      if (n >= t.size() || t[n] < '0' || t[n] > '9') return false;
      exponent = true;
      k = n - 1;
    } else if (std::string_view(".,:/-+%").find(c) == std::string_view::npos) {
      return false;
    }
  }
  return digit;
}

bool is_single_letter(std::string_view token) {
  if (token.empty()) return false;
  auto d = utf8::decode(token, 0);
  return d.len == token.size() && utf8::classify(d.cp) == utf8::CharClass::word && !utf8::is_digit(d.cp);
}

void normalize_text(std::string_view text, const PipelineConfig& cfg,
                    const std::function<void(std::string&&)>& sink) {
  const std::string expanded = expand_contractions(lowercase(text), cfg.contractions);
  const Lemmatizer& lemmatizer = cfg.lemmatizer();

  auto emit = [&](std::string_view piece) {
    piece = trim_hyphens(piece);
    if (piece.empty() || !has_word_char(piece) || is_number(piece) || is_single_letter(piece)) return;
    std::string tok(piece);
    if (cfg.stopwords.count(tok)) return;
    sink(std::move(tok));
  };

  std::string_view s = expanded;
  std::size_t k = 0;
  while (k < s.size()) {
    while (k < s.size()) {
      auto d = utf8::decode(s, k);
      if (!utf8::is_space(d.cp)) break;
      k += d.len;
    }
    std::size_t end = k;
    while (end < s.size()) {
      auto d = utf8::decode(s, end);
      if (utf8::is_space(d.cp)) break;
      end += d.len;
    }
    if (end == k) break;
    std::string_view core = peel(s.substr(k, end - k));
    k = end;
    if (core.empty()) continue;
    std::string lemma = lemmatizer.lemmatize(core, guess_pos(core));
    if (!has_symbol(lemma, cfg.keep_hyphens)) {
      emit(lemma);
      continue;
    }
    for (const auto& piece : split_symbols(lemma, cfg.keep_hyphens)) emit(piece);
  }
}

TokenList normalize_text(std::string_view text, const PipelineConfig& cfg) {
  TokenList out;
  normalize_text(text, cfg, [&](std::string&& t) { out.push_back(std::move(t)); });
  return out;
}

TokenList normalize(std::string_view title, std::string_view abstract, const PipelineConfig& cfg) {
  std::string text(title);
  if (!abstract.empty()) {
    text += ' ';
    if (cfg.copyright_regexes().empty()) {
      text += abstract;
    } else {
      text += strip_copyright(abstract, cfg);
    }
  }
  return normalize_text(text, cfg);
}

}  // namespace fieldscope
