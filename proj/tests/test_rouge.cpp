#include "claimrank/rouge.hpp"

#include <random>

#include "claimrank/errors.hpp"
#include "doctest.h"
#include "oracles.hpp"

using namespace claimrank;
using testsupport::oracle_rouge_l;
using testsupport::oracle_rouge_n;
using testsupport::random_tokens;

namespace {

using Tokens = std::vector<std::string>;

void check_close(const RougeScore& got, double p, double r, double f, double eps = 1e-12) {
    CHECK(got.precision == doctest::Approx(p).epsilon(eps));
    CHECK(got.recall == doctest::Approx(r).epsilon(eps));
    CHECK(got.f1 == doctest::Approx(f).epsilon(eps));
}

}  // namespace

TEST_CASE("rouge-n hand cases") {
    const Tokens ref{"a", "b", "c", "d"};

    SUBCASE("identical text scores 1 everywhere") {
        check_close(rouge_n(ref, ref, 1), 1.0, 1.0, 1.0);
        check_close(rouge_n(ref, ref, 2), 1.0, 1.0, 1.0);
        check_close(rouge_l(ref, ref), 1.0, 1.0, 1.0);
    }
    SUBCASE("half unigram overlap") {
        check_close(rouge_n({"a", "b", "x", "y"}, ref, 1), 0.5, 0.5, 0.5);
    }
    SUBCASE("no shared bigrams") {
        check_close(rouge_n({"a", "c", "b", "d"}, ref, 2), 0.0, 0.0, 0.0);
    }
    SUBCASE("clipping repeated candidate tokens") {
        // candidate has three a's, reference only one: clipped overlap is 1
        check_close(rouge_n({"a", "a", "a"}, {"a"}, 1), 1.0 / 3.0, 1.0, 0.5);
    }
    SUBCASE("candidate shorter than n") {
        check_close(rouge_n({"x"}, {"a", "b"}, 2), 0.0, 0.0, 0.0);
    }
    SUBCASE("empty sides score zero") {
        check_close(rouge_n({}, ref, 1), 0.0, 0.0, 0.0);
        check_close(rouge_n(ref, {}, 1), 0.0, 0.0, 0.0);
        check_close(rouge_l({}, {}), 0.0, 0.0, 0.0);
    }
}

TEST_CASE("rouge-l uses subsequences, not substrings") {
    // LCS of (a c b d) vs (a b c d) is length 3 (a b d or a c d)
    const RougeScore s = rouge_l({"a", "c", "b", "d"}, {"a", "b", "c", "d"});
    check_close(s, 0.75, 0.75, 0.75);

    // gap-tolerant: candidate drops the middle
    const RougeScore t = rouge_l({"the", "cat", "sat"}, {"the", "big", "cat", "sat", "down"});
    CHECK(t.precision == doctest::Approx(1.0));
    CHECK(t.recall == doctest::Approx(3.0 / 5.0));
    CHECK(t.f1 == doctest::Approx(2.0 * 1.0 * 0.6 / 1.6));
}

TEST_CASE("swapping candidate and reference swaps precision and recall") {
    std::mt19937_64 rng(101);
    for (int trial = 0; trial < 60; ++trial) {
        const Tokens a = random_tokens(rng, 10);
        const Tokens b = random_tokens(rng, 10);
        for (int n = 1; n <= 2; ++n) {
            const RougeScore ab = rouge_n(a, b, n);
            const RougeScore ba = rouge_n(b, a, n);
            CHECK(ab.precision == doctest::Approx(ba.recall).epsilon(1e-12));
            CHECK(ab.recall == doctest::Approx(ba.precision).epsilon(1e-12));
            CHECK(ab.f1 == doctest::Approx(ba.f1).epsilon(1e-12));
        }
        const RougeScore lab = rouge_l(a, b);
        const RougeScore lba = rouge_l(b, a);
        CHECK(lab.precision == doctest::Approx(lba.recall).epsilon(1e-12));
        CHECK(lab.f1 == doctest::Approx(lba.f1).epsilon(1e-12));
    }
}

TEST_CASE("appending disjoint tokens to the candidate never raises precision") {
    std::mt19937_64 rng(102);
    for (int trial = 0; trial < 40; ++trial) {
        Tokens cand = random_tokens(rng, 8);
        const Tokens ref = random_tokens(rng, 8);
        if (cand.empty()) cand.push_back("a");
        const RougeScore before = rouge_n(cand, ref, 1);
        Tokens padded = cand;
        padded.push_back("zzz");  // never produced by random_tokens
        padded.push_back("qqq");
        const RougeScore after = rouge_n(padded, ref, 1);
        CHECK(after.precision <= before.precision + 1e-12);
        CHECK(after.recall == doctest::Approx(before.recall).epsilon(1e-12));
    }
}

TEST_CASE("rouge agrees exactly with the brute-force oracles") {
    std::mt19937_64 rng(103);
    for (int trial = 0; trial < 200; ++trial) {
        const Tokens cand = random_tokens(rng, 10);
        const Tokens ref = random_tokens(rng, 10);
        for (int n = 1; n <= 2; ++n) {
            const RougeScore fast = rouge_n(cand, ref, n);
            const RougeScore slow = oracle_rouge_n(cand, ref, n);
            CHECK(fast.precision == slow.precision);
            CHECK(fast.recall == slow.recall);
            CHECK(fast.f1 == slow.f1);
        }
        const RougeScore fast = rouge_l(cand, ref);
        const RougeScore slow = oracle_rouge_l(cand, ref);
        CHECK(fast.precision == slow.precision);
        CHECK(fast.recall == slow.recall);
        CHECK(fast.f1 == slow.f1);
    }
}

TEST_CASE("corpus_rouge averages per-pair scores") {
    SUBCASE("perfect and disjoint pairs average to one half") {
        const std::vector<std::pair<Tokens, Tokens>> pairs = {
            {{"a", "b"}, {"a", "b"}},
            {{"x", "y"}, {"a", "b"}},
        };
        const CorpusRouge c = corpus_rouge(pairs);
        CHECK(c.pairs == 2);
        check_close(c.rouge1, 0.5, 0.5, 0.5);
        check_close(c.rougeL, 0.5, 0.5, 0.5);
    }
    SUBCASE("single pair passes through") {
        const std::vector<std::pair<Tokens, Tokens>> pairs = {
            {{"a", "a", "a"}, {"a"}},
        };
        const CorpusRouge c = corpus_rouge(pairs);
        check_close(c.rouge1, 1.0 / 3.0, 1.0, 0.5);
    }
    SUBCASE("three pairs match the by-hand mean") {
        const std::vector<std::pair<Tokens, Tokens>> pairs = {
            {{"a", "b", "c", "d"}, {"a", "b", "c", "d"}},
            {{"a", "b", "x", "y"}, {"a", "b", "c", "d"}},
            {{"a", "c", "b", "d"}, {"a", "b", "c", "d"}},
        };
        const CorpusRouge c = corpus_rouge(pairs);
        CHECK(c.rouge1.f1 == doctest::Approx((1.0 + 0.5 + 1.0) / 3.0).epsilon(1e-9));
        // bigrams: 3/3, 1/3, 0/3
        CHECK(c.rouge2.precision ==
              doctest::Approx((1.0 + 1.0 / 3.0 + 0.0) / 3.0).epsilon(1e-9));
        CHECK(c.rougeL.f1 == doctest::Approx((1.0 + 0.5 + 0.75) / 3.0).epsilon(1e-9));
    }
    SUBCASE("empty input is an error") {
        CHECK_THROWS_AS(corpus_rouge({}), DataError);
    }
}
