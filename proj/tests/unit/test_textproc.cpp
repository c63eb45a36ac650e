#include <doctest.h>

#include <map>

#include "coronavis/service/config.hpp"
#include "coronavis/textproc.hpp"

using namespace coronavis;

TEST_CASE("tokenize strips edge punctuation and short tokens") {
  CHECK(tokenize("  hello,   world!! a #stayhome covid-19 'quoted' don't ") ==
        TokenList{"hello", "world", "stayhome", "covid-19", "quoted", "don't"});
  CHECK(tokenize("").empty());
  CHECK(tokenize("... !! ?").empty());
  CHECK(tokenize("x y z ab").size() == 1);
}

TEST_CASE("stopword policy always knows the domain words") {
  const StopwordPolicy empty;
  CHECK(empty.contains("covid"));
  CHECK(empty.contains("corona"));
  CHECK(empty.contains("rt"));
  CHECK_FALSE(empty.contains("mask"));

  StopwordPolicy policy({"the", "to"}, {"coronavirus"});
  policy.add_extra("amp");
  CHECK(policy.contains("the"));
  CHECK(policy.contains("coronavirus"));
  CHECK(policy.contains("amp"));
  CHECK(content_tokens("RT the covid masks to amp work", policy) == TokenList{"RT", "masks", "work"});
  CHECK(remove_stopwords({"the", "masks", "rt"}, policy) == TokenList{"masks"});
}

TEST_CASE("shipped stopword lists load") {
  const auto dir = service::resource_dir();
  const auto policy = StopwordPolicy::from_files(dir / "stopwords_en.txt", dir / "stopwords_domain.txt");
  CHECK(policy.standard().size() == 179);
  for (const char* w : {"to", "for", "what", "how", "covid", "corona", "coronavirus"}) CHECK(policy.contains(w));
  CHECK_FALSE(policy.contains("breathing"));
  CHECK_THROWS(StopwordPolicy::load_words("/nonexistent/words.txt"));
}

TEST_CASE("ngrams") {
  const TokenList t{"stay", "home", "stay", "safe"};
  CHECK(ngrams(t, 2) == std::vector<NGram>{{"stay", "home"}, {"home", "stay"}, {"stay", "safe"}});
  CHECK(ngrams(t, 4).size() == 1);
  CHECK(ngrams(t, 5).empty());
  CHECK(ngrams(t, 1).size() == 4);
  CHECK_THROWS_AS(ngrams(t, 0), InvalidArity);
}

TEST_CASE("rank_counts orders by count then key and truncates") {
  const std::map<std::string, std::size_t> counts{{"b", 3}, {"a", 3}, {"c", 5}, {"d", 1}};
  const auto top = rank_counts<std::string>(counts, 3);
  REQUIRE(top.size() == 3);
  CHECK(top[0] == std::pair<std::string, std::size_t>{"c", 5});
  CHECK(top[1].first == "a");
  CHECK(top[2].first == "b");
  CHECK(rank_counts<std::string>(counts, 10).size() == 4);
  CHECK(rank_counts<std::string>(counts, 0).empty());

  // prefix property
  for (std::size_t k = 0; k < 4; ++k) {
    const auto a = rank_counts<std::string>(counts, k);
    const auto b = rank_counts<std::string>(counts, k + 1);
    CHECK(std::equal(a.begin(), a.end(), b.begin()));
  }
}
