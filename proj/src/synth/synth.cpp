#include "fieldscope/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fieldscope/error.hpp"

namespace fieldscope::synth {
namespace {

constexpr std::string_view kConsonants = "dfgklmnprtvz";
constexpr std::string_view kVowels = "aeiou";

// Cumulative table sampled by binary search; cheaper to share than
// std::discrete_distribution when many generators draw from one table.
class Sampler {
 public:
  explicit Sampler(const std::vector<double>& weights) : cum_(weights.size()) {
    std::partial_sum(weights.begin(), weights.end(), cum_.begin());
  }
  std::size_t operator()(std::mt19937_64& rng) const {
    const double u = std::uniform_real_distribution<double>(0.0, cum_.back())(rng);
    auto it = std::upper_bound(cum_.begin(), cum_.end(), u);
    return std::min<std::size_t>(static_cast<std::size_t>(it - cum_.begin()), cum_.size() - 1);
  }

 private:
  std::vector<double> cum_;
};

std::vector<std::string> vocabulary(std::size_t first, std::size_t count) {
  std::vector<std::string> v;
  v.reserve(count);
  for (std::size_t k = 0; k < count; ++k) v.push_back(pseudo_word(first + k));
  return v;
}

}  // namespace

std::string pseudo_word(std::size_t index) {
  const std::size_t base = kConsonants.size() * kVowels.size();
  std::string w;
  std::size_t x = index;
  for (int syllable = 0; syllable < 3 || x > 0; ++syllable) {
    const std::size_t s = (x % base + 17 * static_cast<std::size_t>(syllable)) % base;
    x /= base;
    w += kConsonants[s / kVowels.size()];
    w += kVowels[s % kVowels.size()];
  }
  return w;
}

std::vector<double> random_distribution(std::mt19937_64& rng, std::size_t v, double sparsity) {
  if (v == 0) fail(ErrorCategory::invalid_argument, "distribution needs at least one symbol");
  std::exponential_distribution<double> mass(1.0);
  std::bernoulli_distribution drop(sparsity);
  std::vector<double> p(v);
  double sum = 0.0;
  for (auto& x : p) {
    x = drop(rng) ? 0.0 : mass(rng);
    sum += x;
  }
  if (sum == 0.0) {
    p[std::uniform_int_distribution<std::size_t>(0, v - 1)(rng)] = 1.0;
    return p;
  }
  for (auto& x : p) x /= sum;
  return p;
}

std::vector<double> zipf_weights(std::size_t n, double exponent) {
  std::vector<double> w(n);
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    w[r] = 1.0 / std::pow(static_cast<double>(r + 1), exponent);
    sum += w[r];
  }
  for (auto& x : w) x /= sum;
  return w;
}

std::string sample_text(std::mt19937_64& rng, const std::vector<std::string>& vocabulary,
                        const std::discrete_distribution<std::size_t>& dist, std::size_t length) {
  auto d = dist;
  std::string out;
  for (std::size_t k = 0; k < length; ++k) {
    if (k > 0) out += ' ';
    out += vocabulary[d(rng)];
  }
  return out;
}

PlantedCorpus planted_hierarchy(const HierarchyOptions& o, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  PlantedCorpus out;

  std::vector<TaxonomyNode> nodes;
  std::vector<std::string> specialty_discipline;
  for (std::size_t d = 0; d < o.domains; ++d) {
    const std::string dom = std::to_string(d + 1);
    nodes.push_back({dom, "Domain " + dom, Level::domain, ""});
    for (std::size_t c = 0; c < o.disciplines_per_domain; ++c) {
      char buf[16];
      std::snprintf(buf, sizeof buf, "%s-%02zu", dom.c_str(), c + 1);
      const std::string disc = buf;
      nodes.push_back({disc, "Discipline " + disc, Level::discipline, dom});
      for (std::size_t s = 0; s < o.specialties_per_discipline; ++s) {
        std::snprintf(buf, sizeof buf, ".%02zu", s + 1);
        const std::string spec = disc + buf;
        nodes.push_back({spec, "Specialty " + spec, Level::specialty, disc});
        out.specialties.push_back(spec);
        out.specialty_domain.push_back(dom);
        specialty_discipline.push_back(disc);
      }
    }
  }
  out.taxonomy = TaxonomyTree::from_nodes(nodes);

  const std::size_t n_disc = o.domains * o.disciplines_per_domain;
  const std::size_t n_spec = out.specialties.size();
  std::size_t next = 0;
  auto take = [&](std::size_t count) {
    auto v = vocabulary(next, count);
    next += count;
    return v;
  };
  const auto shared = take(o.shared_words);
  std::vector<std::vector<std::string>> domain_vocab;
  std::vector<std::vector<std::string>> discipline_vocab;
  std::vector<std::vector<std::string>> specialty_vocab;
  for (std::size_t d = 0; d < o.domains; ++d) domain_vocab.push_back(take(o.domain_words));
  for (std::size_t d = 0; d < n_disc; ++d) discipline_vocab.push_back(take(o.discipline_words));
  for (std::size_t s = 0; s < n_spec; ++s) specialty_vocab.push_back(take(o.specialty_words));

  const Sampler layer_pick({o.w_shared, o.w_domain, o.w_discipline, o.w_specialty});
  const Sampler shared_pick(zipf_weights(o.shared_words));
  const Sampler domain_pick(zipf_weights(o.domain_words));
  const Sampler discipline_pick(zipf_weights(o.discipline_words));
  const Sampler specialty_pick(zipf_weights(o.specialty_words));
  std::uniform_int_distribution<int> year(o.first_year, o.last_year);

  for (std::size_t s = 0; s < n_spec; ++s) {
    const std::size_t dom = s / (o.disciplines_per_domain * o.specialties_per_discipline);
    const std::size_t disc = s / o.specialties_per_discipline;
    auto word = [&]() -> const std::string& {
      switch (layer_pick(rng)) {
        case 0: return shared[shared_pick(rng)];
        case 1: return domain_vocab[dom][domain_pick(rng)];
        case 2: return discipline_vocab[disc][discipline_pick(rng)];
        default: return specialty_vocab[s][specialty_pick(rng)];
      }
    };
    auto text = [&](std::size_t length) {
      std::string t;
      for (std::size_t k = 0; k < length; ++k) {
        if (k > 0) t += ' ';
        t += word();
      }
      return t;
    };
    for (std::size_t a = 0; a < o.docs_per_field; ++a) {
      ArticleRecord r;
      char buf[32];
      std::snprintf(buf, sizeof buf, "A%03zu-%04zu", s, a);
      r.id = buf;
      r.year = year(rng);
      r.title = text(8);
      r.abstract = text(o.words_per_doc);
      r.specialty = out.specialties[s];
      out.articles.push_back(std::move(r));
    }
  }

  // Five references per article; the cited field is drawn with weight
  // 8/4/2/1 for the same specialty/discipline/domain/elsewhere.
  std::vector<double> affinity(n_spec * n_spec);
  for (std::size_t i = 0; i < n_spec; ++i) {
    for (std::size_t j = 0; j < n_spec; ++j) {
      const int dist = d_exp(out.taxonomy, out.specialties[i], out.specialties[j]);
      affinity[i * n_spec + j] = std::ldexp(1.0, 3 - dist);
    }
  }
  std::vector<Sampler> cite_pick;
  for (std::size_t i = 0; i < n_spec; ++i) {
    cite_pick.emplace_back(std::vector<double>(affinity.begin() + static_cast<std::ptrdiff_t>(i * n_spec),
                                               affinity.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_spec)));
  }
  std::uniform_int_distribution<std::size_t> within(0, o.docs_per_field - 1);
  for (std::size_t a = 0; a < out.articles.size(); ++a) {
    const std::size_t s = a / o.docs_per_field;
    for (int k = 0; k < 5; ++k) {
      const std::size_t t = cite_pick[s](rng);
      const std::size_t target = t * o.docs_per_field + within(rng);
      if (target == a) continue;
      out.citations.push_back({out.articles[a].id, out.articles[target].id});
    }
  }
  return out;
}

std::vector<Document> abstracts(std::size_t n, std::size_t words_per_abstract, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto vocab = vocabulary(0, 30000);
  const Sampler pick(zipf_weights(vocab.size()));
  std::uniform_int_distribution<int> roll(0, 99);
  std::uniform_int_distribution<int> number(1, 2020);

  auto sentence_words = [&](std::string& out, std::size_t length, bool capitalize) {
    for (std::size_t k = 0; k < length; ++k) {
      if (k > 0) out += ' ';
      const int r = roll(rng);
      std::string w = vocab[pick(rng)];
      if (r < 3) {
        w = std::to_string(number(rng));
      } else if (r < 6) {
        w += '-' + vocab[pick(rng)];
      } else if (r < 8) {
        w = '(' + w + ')';
      }
      if (capitalize && k == 0 && std::islower(static_cast<unsigned char>(w[0]))) w[0] = static_cast<char>(std::toupper(w[0]));
      out += w;
      if (r >= 90 && k + 1 < length) out += ',';
    }
  };

  std::vector<Document> docs(n);
  for (auto& d : docs) {
    sentence_words(d.title, 10, true);
    std::size_t left = words_per_abstract;
    while (left > 0) {
      const std::size_t len = std::min<std::size_t>(left, 12 + static_cast<std::size_t>(roll(rng) % 10));
      if (!d.abstract.empty()) d.abstract += ' ';
      sentence_words(d.abstract, len, true);
      d.abstract += '.';
      left -= len;
    }
  }
  return docs;
}

}  // namespace fieldscope::synth
