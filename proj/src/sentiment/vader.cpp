// Valence-intensity polarity scoring. Rule order and constants follow the
// published reference algorithm so scores agree with it to floating-point
// precision on normalized tweet text.

#include <algorithm>
#include <cmath>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "coronavis/sentiment.hpp"

namespace coronavis {

namespace {

constexpr double kBoostIncrement = 0.293;
constexpr double kBoostDecrement = -0.293;
constexpr double kCapsIncrement = 0.733;
constexpr double kNegationScalar = -0.74;
constexpr double kNormalizationAlpha = 15.0;

const std::unordered_set<std::string>& negations() {
  static const std::unordered_set<std::string> words{
      "aint",    "arent",    "cannot",   "cant",     "couldnt",  "darent",  "didnt",   "doesnt",
      "ain't",   "aren't",   "can't",    "couldn't", "daren't",  "didn't",  "doesn't", "dont",
      "hadnt",   "hasnt",    "havent",   "isnt",     "mightnt",  "mustnt",  "neither", "don't",
      "hadn't",  "hasn't",   "haven't",  "isn't",    "mightn't", "mustn't", "neednt",  "needn't",
      "never",   "none",     "nope",     "nor",      "not",      "nothing", "nowhere", "oughtnt",
      "shant",   "shouldnt", "uhuh",     "wasnt",    "werent",   "oughtn't", "shan't", "shouldn't",
      "uh-uh",   "wasn't",   "weren't",  "without",  "wont",     "wouldnt", "won't",   "wouldn't",
      "rarely",  "seldom",   "despite"};
  return words;
}

const std::unordered_map<std::string, double>& boosters() {
  static const std::unordered_map<std::string, double> table = [] {
    std::unordered_map<std::string, double> t;
    for (const char* w :
         {"absolutely", "amazingly", "awfully", "completely", "considerable", "considerably", "decidedly",
          "deeply", "effing", "enormous", "enormously", "entirely", "especially", "exceptional",
          "exceptionally", "extreme", "extremely", "fabulously", "flipping", "flippin", "frackin",
          "fracking", "fricking", "frickin", "frigging", "friggin", "fully", "fuckin", "fucking", "fuggin",
          "fugging", "greatly", "hella", "highly", "hugely", "incredible", "incredibly", "intensely",
          "major", "majorly", "more", "most", "particularly", "purely", "quite", "really", "remarkably",
          "so", "substantially", "thoroughly", "total", "totally", "tremendous", "tremendously", "uber",
          "unbelievably", "unusually", "utter", "utterly", "very"})
      t.emplace(w, kBoostIncrement);
    for (const char* w :
         {"almost", "barely", "hardly", "just enough", "kind of", "kinda", "kindof", "kind-of", "less",
          "little", "marginal", "marginally", "occasional", "occasionally", "partly", "scarce",
          "scarcely", "slight", "slightly", "somewhat", "sort of", "sorta", "sortof", "sort-of"})
      t.emplace(w, kBoostDecrement);
    return t;
  }();
  return table;
}

const std::unordered_map<std::string, double>& special_cases() {
  static const std::unordered_map<std::string, double> table{
      {"the shit", 3},       {"the bomb", 3},      {"bad ass", 1.5},   {"badass", 1.5},
      {"bus stop", 0.0},     {"yeah right", -2},   {"kiss of death", -1.5},
      {"to die for", 3},     {"beating heart", 3.5}};
  return table;
}

constexpr std::string_view kPunctuation = "!\"#$%&'()*+,-./:;<=>?@[\\]^_`{|}~";

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
  return out;
}

bool is_upper(std::string_view s) {
  bool cased = false;
  for (char c : s) {
    if (c >= 'a' && c <= 'z') return false;
    if (c >= 'A' && c <= 'Z') cased = true;
  }
  return cased;
}

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// Edge punctuation is stripped unless that leaves two characters or fewer,
// which keeps emoticons such as ":)" intact.
std::string strip_punctuation_if_word(std::string_view token) {
  auto first = token.find_first_not_of(kPunctuation);
  if (first == std::string_view::npos) return std::string(token);
  auto last = token.find_last_not_of(kPunctuation);
  auto stripped = token.substr(first, last - first + 1);
  if (stripped.size() <= 2) return std::string(token);
  return std::string(stripped);
}

class Sentence {
 public:
  explicit Sentence(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      while (i < text.size() && is_space(text[i])) ++i;
      std::size_t start = i;
      while (i < text.size() && !is_space(text[i])) ++i;
      if (i > start) words_.push_back(strip_punctuation_if_word(text.substr(start, i - start)));
    }
    lowered_.reserve(words_.size());
    std::size_t caps = 0;
    for (const auto& w : words_) {
      lowered_.push_back(lower(w));
      if (is_upper(w)) ++caps;
    }
    const std::size_t differential = words_.size() - caps;
    cap_differential_ = differential > 0 && differential < words_.size();
  }

  std::size_t size() const { return words_.size(); }
  const std::string& word(std::size_t i) const { return words_[i]; }
  const std::string& low(std::size_t i) const { return lowered_[i]; }
  bool cap_differential() const { return cap_differential_; }

 private:
  std::vector<std::string> words_;
  std::vector<std::string> lowered_;
  bool cap_differential_ = false;
};

bool negated(const std::string& lowered_word) {
  return negations().count(lowered_word) > 0 || lowered_word.find("n't") != std::string::npos;
}

double scalar_inc_dec(const std::string& word, const std::string& lowered, double valence, bool cap_diff) {
  auto it = boosters().find(lowered);
  if (it == boosters().end()) return 0.0;
  double scalar = it->second;
  if (valence < 0) scalar *= -1;
  if (is_upper(word) && cap_diff) scalar += valence > 0 ? kCapsIncrement : -kCapsIncrement;
  return scalar;
}

double negation_check(double valence, const Sentence& s, int start, std::size_t i) {
  if (start == 0) {
    if (negated(s.low(i - 1))) valence *= kNegationScalar;
  } else if (start == 1) {
    if (s.low(i - 2) == "never" && (s.low(i - 1) == "so" || s.low(i - 1) == "this")) {
      valence *= 1.25;
    } else if (s.low(i - 2) == "without" && s.low(i - 1) == "doubt") {
      // "without doubt" keeps the valence
    } else if (negated(s.low(i - 2))) {
      valence *= kNegationScalar;
    }
  } else {
    if ((s.low(i - 3) == "never" && (s.low(i - 2) == "so" || s.low(i - 2) == "this")) ||
        (s.low(i - 1) == "so" || s.low(i - 1) == "this")) {
      valence *= 1.25;
    } else if (s.low(i - 3) == "without" && (s.low(i - 2) == "doubt" || s.low(i - 1) == "doubt")) {
    } else if (negated(s.low(i - 3))) {
      valence *= kNegationScalar;
    }
  }
  return valence;
}

double special_idioms_check(double valence, const Sentence& s, std::size_t i) {
  const std::string one_zero = s.low(i - 1) + " " + s.low(i);
  const std::string two_one_zero = s.low(i - 2) + " " + s.low(i - 1) + " " + s.low(i);
  const std::string two_one = s.low(i - 2) + " " + s.low(i - 1);
  const std::string three_two_one = s.low(i - 3) + " " + s.low(i - 2) + " " + s.low(i - 1);
  const std::string three_two = s.low(i - 3) + " " + s.low(i - 2);

  const auto& special = special_cases();
  for (const auto* seq : {&one_zero, &two_one_zero, &two_one, &three_two_one, &three_two}) {
    if (auto it = special.find(*seq); it != special.end()) {
      valence = it->second;
      break;
    }
  }
  if (s.size() - 1 > i) {
    if (auto it = special.find(s.low(i) + " " + s.low(i + 1)); it != special.end()) valence = it->second;
  }
  if (s.size() - 1 > i + 1) {
    if (auto it = special.find(s.low(i) + " " + s.low(i + 1) + " " + s.low(i + 2)); it != special.end())
      valence = it->second;
  }
  for (const auto* gram : {&three_two_one, &three_two, &two_one}) {
    if (auto it = boosters().find(*gram); it != boosters().end()) valence += it->second;
  }
  return valence;
}

double least_check(double valence, const Sentence& s, std::size_t i, const ValenceLexicon& lexicon) {
  if (i > 1 && !lexicon.contains(s.low(i - 1)) && s.low(i - 1) == "least") {
    if (s.low(i - 2) != "at" && s.low(i - 2) != "very") valence *= kNegationScalar;
  } else if (i > 0 && !lexicon.contains(s.low(i - 1)) && s.low(i - 1) == "least") {
    valence *= kNegationScalar;
  }
  return valence;
}

double token_valence(const Sentence& s, std::size_t i, const ValenceLexicon& lexicon) {
  auto base = lexicon.find(s.low(i));
  if (!base) return 0.0;
  double valence = *base;
  const bool cap_diff = s.cap_differential();

  if (s.low(i) == "no" && i != s.size() - 1 && lexicon.contains(s.low(i + 1))) valence = 0.0;
  if ((i > 0 && s.low(i - 1) == "no") || (i > 1 && s.low(i - 2) == "no") ||
      (i > 2 && s.low(i - 3) == "no" && (s.low(i - 1) == "or" || s.low(i - 1) == "nor")))
    valence = *base * kNegationScalar;

  if (is_upper(s.word(i)) && cap_diff) valence += valence > 0 ? kCapsIncrement : -kCapsIncrement;

  for (int start = 0; start < 3; ++start) {
    const auto back = static_cast<std::size_t>(start + 1);
    if (i > static_cast<std::size_t>(start) && !lexicon.contains(s.low(i - back))) {
      double scalar = scalar_inc_dec(s.word(i - back), s.low(i - back), valence, cap_diff);
      if (start == 1 && scalar != 0) scalar *= 0.95;
      if (start == 2 && scalar != 0) scalar *= 0.9;
      valence += scalar;
      valence = negation_check(valence, s, start, i);
      if (start == 2) valence = special_idioms_check(valence, s, i);
    }
  }
  return least_check(valence, s, i, lexicon);
}

// Scales sentiments before the first "but" by 0.5 and after it by 1.5. The
// position of each value is looked up as the first equal element, exactly as
// the reference does; with repeated values this rescales the earliest copy.
void but_check(const Sentence& s, std::vector<double>& sentiments) {
  std::size_t but_index = s.size();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s.low(i) == "but") {
      but_index = i;
      break;
    }
  }
  if (but_index == s.size()) return;
  for (std::size_t j = 0; j < sentiments.size(); ++j) {
    const double value = sentiments[j];
    const auto si = static_cast<std::size_t>(std::find(sentiments.begin(), sentiments.end(), value) - sentiments.begin());
    if (si < but_index) sentiments[si] = value * 0.5;
    else if (si > but_index) sentiments[si] = value * 1.5;
  }
}

double punctuation_emphasis(std::string_view text) {
  const auto exclamations = std::min<std::ptrdiff_t>(std::count(text.begin(), text.end(), '!'), 4);
  const auto questions = std::count(text.begin(), text.end(), '?');
  double question_amp = 0.0;
  if (questions > 1) question_amp = questions <= 3 ? static_cast<double>(questions) * 0.18 : 0.96;
  return static_cast<double>(exclamations) * 0.292 + question_amp;
}

double normalize(double score) {
  const double norm = score / std::sqrt(score * score + kNormalizationAlpha);
  return std::clamp(norm, -1.0, 1.0);
}

}  // namespace

PolarityScore score_polarity(std::string_view text, const ValenceLexicon& lexicon) {
  auto first = text.find_first_not_of(" \t\n\r\f\v");
  if (first == std::string_view::npos) return {};
  auto last = text.find_last_not_of(" \t\n\r\f\v");
  text = text.substr(first, last - first + 1);

  Sentence s(text);
  std::vector<double> sentiments;
  sentiments.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (boosters().count(s.low(i)) ||
        (i + 1 < s.size() && s.low(i) == "kind" && s.low(i + 1) == "of")) {
      sentiments.push_back(0.0);
      continue;
    }
    sentiments.push_back(token_valence(s, i, lexicon));
  }
  but_check(s, sentiments);
  if (sentiments.empty()) return {};

  double sum = 0.0;
  for (double v : sentiments) sum += v;
  const double emphasis = punctuation_emphasis(text);
  if (sum > 0) sum += emphasis;
  else if (sum < 0) sum -= emphasis;

  double pos_sum = 0.0, neg_sum = 0.0;
  std::size_t neutral = 0;
  for (double v : sentiments) {
    if (v > 0) pos_sum += v + 1;
    if (v < 0) neg_sum += v - 1;
    if (v == 0) ++neutral;
  }
  if (pos_sum > std::fabs(neg_sum)) pos_sum += emphasis;
  else if (pos_sum < std::fabs(neg_sum)) neg_sum -= emphasis;

  const double total = pos_sum + std::fabs(neg_sum) + static_cast<double>(neutral);
  PolarityScore score;
  score.compound = normalize(sum);
  score.pos = std::fabs(pos_sum / total);
  score.neg = std::fabs(neg_sum / total);
  score.neu = std::fabs(static_cast<double>(neutral) / total);
  return score;
}

SentimentLabel classify(double compound) {
  if (compound >= 0.05) return SentimentLabel::positive;
  if (compound <= -0.05) return SentimentLabel::negative;
  return SentimentLabel::neutral;
}

SentimentLabel classify(const PolarityScore& score) { return classify(score.compound); }

std::string_view to_string(SentimentLabel label) {
  switch (label) {
    case SentimentLabel::negative: return "negative";
    case SentimentLabel::neutral: return "neutral";
    case SentimentLabel::positive: return "positive";
  }
  return "neutral";
}

}  // namespace coronavis
