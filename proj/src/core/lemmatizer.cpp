#include "fieldscope/lemmatizer.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "fieldscope/error.hpp"

namespace fieldscope {

namespace {

using namespace std::string_view_literals;

const std::unordered_map<std::string_view, std::string_view>& irregular_verbs() {
  static const std::unordered_map<std::string_view, std::string_view> m = {
      {"is", "be"}, {"are", "be"}, {"was", "be"}, {"were", "be"}, {"been", "be"},
      {"being", "be"}, {"am", "be"}, {"has", "have"}, {"had", "have"}, {"having", "have"},
      {"does", "do"}, {"did", "do"}, {"done", "do"}, {"doing", "do"}, {"goes", "go"},
      {"went", "go"}, {"gone", "go"}, {"made", "make"}, {"making", "make"}, {"found", "find"},
      {"shown", "show"}, {"given", "give"}, {"gave", "give"}, {"taken", "take"}, {"took", "take"},
      {"seen", "see"}, {"known", "know"}, {"knew", "know"}, {"grown", "grow"}, {"grew", "grow"},
      {"became", "become"}, {"began", "begin"}, {"begun", "begin"}, {"brought", "bring"},
      {"built", "build"}, {"bought", "buy"}, {"chose", "choose"}, {"chosen", "choose"},
      {"came", "come"}, {"drew", "draw"}, {"drawn", "draw"}, {"drove", "drive"},
      {"driven", "drive"}, {"eaten", "eat"}, {"fallen", "fall"}, {"felt", "feel"},
      {"got", "get"}, {"gotten", "get"}, {"held", "hold"}, {"kept", "keep"}, {"led", "lead"},
      {"meant", "mean"}, {"met", "meet"}, {"paid", "pay"}, {"risen", "rise"}, {"ran", "run"},
      {"said", "say"}, {"sought", "seek"}, {"sold", "sell"}, {"sent", "send"},
      {"spoke", "speak"}, {"spoken", "speak"}, {"spent", "spend"}, {"stood", "stand"},
      {"taught", "teach"}, {"told", "tell"}, {"thought", "think"}, {"understood", "understand"},
      {"wrote", "write"}, {"written", "write"}, {"laid", "lay"}, {"flew", "fly"},
      {"flown", "fly"}, {"arose", "arise"}, {"arisen", "arise"}, {"underwent", "undergo"},
      {"undergone", "undergo"}, {"broke", "break"}, {"broken", "break"}, {"hidden", "hide"},
      {"shook", "shake"}, {"shaken", "shake"}, {"forgot", "forget"}, {"forgotten", "forget"},
      {"dealt", "deal"}, {"lying", "lie"}, {"dying", "die"}, {"tied", "tie"}, {"died", "die"},
  };
  return m;
}

const std::unordered_map<std::string_view, std::string_view>& irregular_nouns() {
  static const std::unordered_map<std::string_view, std::string_view> m = {
      {"children", "child"}, {"men", "man"}, {"women", "woman"}, {"mice", "mouse"},
      {"feet", "foot"}, {"teeth", "tooth"}, {"geese", "goose"}, {"analyses", "analysis"},
      {"hypotheses", "hypothesis"}, {"theses", "thesis"}, {"syntheses", "synthesis"},
      {"diagnoses", "diagnosis"}, {"crises", "crisis"}, {"axes", "axis"},
      {"phenomena", "phenomenon"}, {"criteria", "criterion"}, {"indices", "index"},
      {"matrices", "matrix"}, {"vertices", "vertex"}, {"appendices", "appendix"},
      {"spectra", "spectrum"}, {"maxima", "maximum"}, {"minima", "minimum"},
      {"optima", "optimum"}, {"bacteria", "bacterium"}, {"nuclei", "nucleus"},
      {"stimuli", "stimulus"}, {"fungi", "fungus"}, {"loci", "locus"}, {"radii", "radius"},
      {"foci", "focus"}, {"leaves", "leaf"}, {"lives", "life"}, {"wives", "wife"},
      {"knives", "knife"}, {"halves", "half"}, {"selves", "self"}, {"shelves", "shelf"},
      {"wolves", "wolf"}, {"strata", "stratum"}, {"media", "medium"}, {"genera", "genus"},
  };
  return m;
}

// Words ending in -s / -ing / -ed that the suffix rules must leave alone.
const std::unordered_set<std::string_view>& invariant_words() {
  static const std::unordered_set<std::string_view> s = {
      "physics", "mathematics", "economics", "statistics", "dynamics", "genetics", "ethics",
      "politics", "linguistics", "mechanics", "optics", "electronics", "thermodynamics",
      "kinetics", "genomics", "proteomics", "informatics", "robotics", "acoustics",
      "diabetes", "means", "news", "lens", "gas", "bias", "species", "series", "always",
      "perhaps", "towards", "afterwards", "whereas", "besides", "sometimes", "thus", "yes",
      "during", "nothing", "something", "anything", "everything", "thing", "string", "spring",
      "king", "ring", "wing", "ceiling", "morning", "evening", "sibling", "bring", "sing",
      "swing", "sting", "cling", "notwithstanding", "hundred", "indeed", "kindred", "sacred",
      "naked", "wicked", "bed", "red", "shed", "embed", "always", "alias", "atlas", "canvas",
      "chaos", "ethos", "pathos", "cosmos", "tennis", "aids", "ras", "dos",
  };
  return s;
}

// Base forms used to pick between candidate stems of -ed / -ing / -s verbs.
const std::unordered_set<std::string_view>& verb_bases() {
  static const std::unordered_set<std::string_view> s = {
      "use", "study", "show", "find", "propose", "present", "develop", "investigate", "analyze",
      "analyse", "compare", "measure", "observe", "obtain", "describe", "demonstrate",
      "provide", "increase", "decrease", "reduce", "improve", "apply", "require", "include",
      "indicate", "suggest", "report", "determine", "evaluate", "identify", "examine",
      "produce", "derive", "estimate", "predict", "perform", "achieve", "allow", "enable",
      "affect", "associate", "base", "compute", "calculate", "model", "simulate", "test",
      "design", "need", "exceed", "proceed", "succeed", "agree", "free", "focus", "occur",
      "refer", "prefer", "control", "emerge", "evolve", "involve", "remain", "contain",
      "consider", "explore", "assess", "address", "discuss", "explain", "establish", "exhibit",
      "form", "generate", "induce", "introduce", "limit", "link", "map", "operate", "organize",
      "organise", "reveal", "select", "solve", "support", "treat", "vary", "yield", "change",
      "relate", "combine", "confirm", "correlate", "define", "detect", "distribute", "enhance",
      "ensure", "expect", "express", "extend", "govern", "highlight", "imply", "influence",
      "interact", "learn", "locate", "maintain", "manage", "mediate", "modify", "monitor",
      "motivate", "note", "offer", "outline", "participate", "prepare", "preserve", "process",
      "promote", "publish", "quantify", "range", "receive", "record", "regulate", "replace",
      "represent", "reproduce", "resolve", "respond", "result", "review", "sample", "scale",
      "search", "share", "simplify", "specify", "stabilize", "store", "suffer", "survey",
      "train", "transfer", "transform", "understand", "update", "validate", "verify", "write",
      "refine", "classify", "cite", "cluster", "rank", "count", "encode", "decode", "converge",
      "diverge", "cause", "create", "continue", "believe", "compose", "decline", "describe",
      "lose", "move", "make", "take", "give", "come", "become", "tune", "scatter", "fit",
      "plan", "stop", "drop", "admit", "commit", "permit", "submit", "transmit", "emit",
      "omit", "begin", "run", "set", "get", "put", "cut", "let", "hit", "shift", "split",
      "mix", "fix", "tax", "relax", "fill", "call", "fall", "install", "kill", "spill",
      "travel", "label", "signal", "cancel", "total", "pass", "miss", "dismiss", "stress",
      "press", "cross", "access", "toss", "buzz", "reach", "touch", "match", "teach", "search",
      "wish", "push", "establish", "publish", "finish", "accomplish", "diminish", "watch",
  };
  return s;
}

bool ends_with(std::string_view w, std::string_view suffix) {
  return w.size() >= suffix.size() && w.substr(w.size() - suffix.size()) == suffix;
}

bool is_vowel(char c) { return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u'; }

bool is_lower_alpha(std::string_view w) {
  return std::all_of(w.begin(), w.end(), [](char c) { return c >= 'a' && c <= 'z'; });
}

// Final letters doubled by inflection (stopp-ed); l, s and z double in base forms too.
bool doubled_consonant(std::string_view stem) {
  if (stem.size() < 3) return false;
  char a = stem[stem.size() - 2];
  char b = stem.back();
  return a == b && !is_vowel(b) && b != 'l' && b != 's' && b != 'z';
}

// Stem endings after which a dropped silent 'e' is restored.
bool needs_final_e(std::string_view stem) {
  static constexpr std::string_view endings[] = {"at", "bl", "iz", "uc", "iv", "ov", "ur", "us",
                                                 "ys", "yz", "rv", "lv", "dg", "rg", "rc", "nc",
                                                 "ns", "rs", "ps", "ut", "ik", "ir"};
  for (auto e : endings) {
    if (ends_with(stem, e)) return true;
  }
  // consonant-vowel-consonant short stem (hop -> hope), excluding w, x, y
  if (stem.size() == 3 && !is_vowel(stem[0]) && is_vowel(stem[1]) && !is_vowel(stem[2]) &&
      stem[2] != 'w' && stem[2] != 'x' && stem[2] != 'y') {
    return true;
  }
  return false;
}

std::string verb_lemma(std::string_view w) {
  if (auto it = irregular_verbs().find(w); it != irregular_verbs().end()) return std::string(it->second);
  if (verb_bases().count(w) || invariant_words().count(w)) return std::string(w);

  auto pick = [](std::initializer_list<std::string> candidates) -> std::string {
    for (const auto& c : candidates) {
      if (verb_bases().count(c)) return c;
    }
    return {};
  };

  if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
  if (ends_with(w, "ied") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";

  if (ends_with(w, "ing") || ends_with(w, "ed")) {
    std::size_t cut = ends_with(w, "ing") ? 3 : 2;
    std::string stem(w.substr(0, w.size() - cut));
    if (stem.size() < 2) return std::string(w);
    std::string undoubled = doubled_consonant(stem) ? stem.substr(0, stem.size() - 1) : stem;
    if (auto hit = pick({stem, stem + "e", undoubled}); !hit.empty()) return hit;
    if (ends_with(w, "eed")) return std::string(w);
    if (doubled_consonant(stem)) return undoubled;
    if (needs_final_e(stem)) return stem + "e";
    return stem;
  }

  if (ends_with(w, "s") && !ends_with(w, "ss") && w.size() > 3) {
    std::string drop1(w.substr(0, w.size() - 1));
    std::string drop2(w.substr(0, w.size() - 2));
    if (auto hit = pick({drop1, drop2}); !hit.empty()) return hit;
    if (ends_with(w, "sses") || ends_with(w, "ches") || ends_with(w, "shes") ||
        ends_with(w, "xes") || ends_with(w, "zes")) {
      return drop2;
    }
    return drop1;
  }
  return std::string(w);
}

std::string noun_lemma(std::string_view w) {
  if (auto it = irregular_nouns().find(w); it != irregular_nouns().end()) return std::string(it->second);
  if (invariant_words().count(w)) return std::string(w);
  if (ends_with(w, "ss") || ends_with(w, "us") || ends_with(w, "is") || !ends_with(w, "s")) {
    return std::string(w);
  }
  if (ends_with(w, "ies") && w.size() > 4) return std::string(w.substr(0, w.size() - 3)) + "y";
  if (ends_with(w, "sses") || ends_with(w, "ches") || ends_with(w, "shes") ||
      ends_with(w, "xes") || ends_with(w, "zes")) {
    return std::string(w.substr(0, w.size() - 2));
  }
  return std::string(w.substr(0, w.size() - 1));
}

class SuffixLemmatizer final : public Lemmatizer {
 public:
  std::string lemmatize(std::string_view token, CoarsePos pos) const override {
    switch (pos) {
      case CoarsePos::noun: return noun_lemma(token);
      case CoarsePos::verb: return verb_lemma(token);
      case CoarsePos::other: break;
    }
    return std::string(token);
  }
};

class IdentityLemmatizer final : public Lemmatizer {
 public:
  std::string lemmatize(std::string_view token, CoarsePos) const override { return std::string(token); }
};

}  // namespace

CoarsePos guess_pos(std::string_view token) {
  if (!is_lower_alpha(token)) return CoarsePos::other;
  if (irregular_verbs().count(token)) return CoarsePos::verb;
  if (irregular_nouns().count(token)) return CoarsePos::noun;
  if (token.size() < 3) return CoarsePos::other;
  if (invariant_words().count(token)) return CoarsePos::other;
  if (token.size() >= 5 && (ends_with(token, "ing") || ends_with(token, "ed"))) return CoarsePos::verb;
  if (token.size() >= 4 && ends_with(token, "s") && !ends_with(token, "ss") &&
      !ends_with(token, "us") && !ends_with(token, "is")) {
    return CoarsePos::noun;
  }
  return CoarsePos::other;
}

std::unique_ptr<Lemmatizer> make_lemmatizer(std::string_view name) {
  if (name == "suffix") return std::make_unique<SuffixLemmatizer>();
  if (name == "identity") return std::make_unique<IdentityLemmatizer>();
  fail(ErrorCategory::invalid_argument, "unknown lemmatizer '" + std::string(name) + "'");
}

std::vector<std::string> lemmatizer_names() { return {"identity", "suffix"}; }

}  // namespace fieldscope
