#include "doctest.h"
#include "fieldscope/text.hpp"

using namespace fieldscope;

TEST_CASE("title normalization folds typographic variants") {
  CHECK(normalize_title("MICRO & NANO LETTERS") == "micro and nano letters");
  CHECK(normalize_title("Micro and Nano Letters") == "micro and nano letters");
  CHECK(normalize_title("NANOMEDICINE: NANOTECHNOLOGY, BIOLOGY, AND MEDICINE") ==
        normalize_title("NANOMEDICINE-NANOTECHNOLOGY BIOLOGY AND MEDICINE"));
  CHECK(normalize_title("E-JOURNAL OF SURFACE SCIENCE") ==
        normalize_title("E JOURNAL OF SURFACE SCIENCE"));
  // an en/em dash introduces a subtitle and the tail is dropped
  CHECK(normalize_title("INTEGRATIVE BIOLOGY – QUANTITATIVE BIOSCIENCE") ==
        "integrative biology");
  CHECK(normalize_title("  Nano   Today  ") == "nano today");
}

TEST_CASE("tokenization splits on every non-alphanumeric byte") {
  CHECK(tokenize("Nano-flow LC/MS") == std::vector<std::string>{"nano", "flow", "lc", "ms"});
  CHECK(tokenize("NaNO2 salts") == std::vector<std::string>{"nano2", "salts"});
  CHECK(tokenize("") == std::vector<std::string>{});
  auto pos = tokenize_positions("alpha beta alpha");
  REQUIRE(pos.size() == 3);
  CHECK(pos[2].token == "alpha");
  CHECK(pos[2].pos == 2);
}

TEST_CASE("wildcard matching") {
  CHECK(wildcard_match("nano*", "nano"));
  CHECK(wildcard_match("nano*", "nanowire"));
  CHECK_FALSE(wildcard_match("nano*", "opennano"));
  CHECK(wildcard_match("a*fulleren*", "azafullerene"));
  CHECK(wildcard_match("n*plankton*", "nanoplankton"));
  CHECK_FALSE(wildcard_match("plankton*", "nanoplankton"));
  CHECK(wildcard_match("nm", "nm"));
  CHECK_FALSE(wildcard_match("nm", "nms"));
  CHECK(wildcard_match("*an*", "plan"));
}

TEST_CASE("display rounding is half-up") {
  CHECK(round_half_up(0.865, 2) == doctest::Approx(0.87));
  CHECK(round_half_up(0.864999, 2) == doctest::Approx(0.86));
  CHECK(round_half_up(0.4654374, 2) == doctest::Approx(0.47));
}
