#include <doctest.h>

#include "kvisits/generate.hpp"
#include "kvisits/io.hpp"

using namespace kvisits;

namespace {
ErrorCode parse_error_of(std::string_view text) {
    try {
        io::parse(text);
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::InternalInvariantViolation;
}
} // namespace

TEST_CASE("parse kvisits with comments and unsorted input") {
    const KVisitsInstance inst = io::parse_kvisits("# example\nkvisits 1\nk 2\n\ndeadlines 8 6 11 8 14 8 11  # trailing\n");
    CHECK(inst == KVisitsInstance({6, 8, 8, 8, 11, 11, 14}, 2));
}

TEST_CASE("parse errors") {
    CHECK(parse_error_of("kvisits 2\nk 2\ndeadlines 1\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("k 2\ndeadlines 1\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("kvisits 1\nk 2\ndeadlines 1 x\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("kvisits 1\nk 2\ndeadlines 1\nfoo 3\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("kvisits 1\nk 2\nk 2\ndeadlines 1\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("kvisits 1\nk 2\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("") == ErrorCode::ParseError);
    CHECK(parse_error_of("varkvisits 1\nn 2\nk 2\nrow 1 2\n") == ErrorCode::ParseError);
    CHECK(parse_error_of("kvisits 1\nk 2\ndeadlines 0 3\n") == ErrorCode::NonPositiveDeadline);
    CHECK(parse_error_of("pm 1\nD 3 3\nA 2 3\nT 4 4\n") == ErrorCode::DuplicateTargets);
    CHECK_THROWS_AS(io::parse_schedule("kvisits 1\nk 1\ndeadlines 1\n"), Error);
}

TEST_CASE("round trip for every format") {
    const std::vector<io::Document> docs = {
        KVisitsInstance({6, 8, 8, 8, 11, 11, 14}, 2),
        VarKVisitsInstance({{4, 4, 12}, {4, 4, 12}}),
        Schedule{{1, 2, 1, 2}},
        pm::make_instance({6, 7, 8, 8, 15, 15}, {12, 13, 14, 15, 20, 28}),
        reductions::Rn3dmInstance{{2, 2}, 5},
        reductions::In3dmInstance{{5, 5}, {6, 7}},
        reductions::ThresholdPinwheelInstance{{4, 4}, {6, 6}, {2, 2}},
    };
    std::string all;
    for (const io::Document& d : docs) {
        const std::string text = io::to_text(d);
        CHECK(io::parse(text) == d);
        CHECK(io::to_text(io::parse(text)) == text);
        all += text;
    }
    CHECK(io::parse_all(all) == docs);
}

TEST_CASE("round trip on random corpora") {
    gen::Rng rng(2);
    for (int i = 0; i < 200; ++i) {
        const int n = static_cast<int>(rng.uniform(1, 12));
        const io::Document a = gen::random_kvisits(rng, n, 3 * n, static_cast<int>(rng.uniform(1, 4)));
        const io::Document b = gen::random_pm(rng, n, 2 * n);
        const io::Document c = gen::random_rn3dm_yes(rng, static_cast<int>(rng.uniform(1, 4)), 12);
        for (const io::Document& d : {a, b, c})
            CHECK(io::parse(io::to_text(d)) == d);
    }
}

TEST_CASE("generator is reproducible") {
    gen::Rng a(42), b(42);
    for (int i = 0; i < 50; ++i)
        CHECK(gen::random_kvisits(a, 6, 12, 2) == gen::random_kvisits(b, 6, 12, 2));
    gen::Rng c(7);
    const KVisitsInstance d = gen::random_distinct_kvisits(c, 1000, 500, 2000);
    for (int i = 1; i < d.n(); ++i)
        CHECK(d.deadlines()[static_cast<std::size_t>(i)] > d.deadlines()[static_cast<std::size_t>(i - 1)]);
}
