#include <doctest.h>

#include <limits>

#include "dca/errors.hpp"
#include "dca/ext_value.hpp"
#include "dca/price_vector.hpp"
#include "dca/set_fn.hpp"
#include "dca/subset.hpp"
#include "support.hpp"

using namespace dca;
using testing::S;
using testing::table;
using testing::X;

TEST_CASE("ext_add absorbs NEG_INF") {
  const auto ni = ExtValue::neg_inf();
  CHECK(ext_add(ni, ExtValue::integer(5)).is_neg_inf());
  CHECK(ext_add(ExtValue::integer(5), ni).is_neg_inf());
  CHECK(ext_add(ni, ni).is_neg_inf());
  CHECK(ext_add(ExtValue::integer(2), ExtValue::integer(3)) == ExtValue::integer(5));
  CHECK(ext_add(ExtValue::real(0.5), ExtValue::real(0.25)) == ExtValue::real(0.75));
}

TEST_CASE("ext_add reports integer overflow") {
  const auto big = ExtValue::integer(std::numeric_limits<std::int64_t>::max());
  CHECK_THROWS_AS(ext_add(big, ExtValue::integer(1)), ArithmeticOverflow);
  CHECK_THROWS_AS(ext_negate(ExtValue::integer(std::numeric_limits<std::int64_t>::min())), ArithmeticOverflow);
  CHECK_THROWS_AS(ext_sub(ExtValue::integer(std::numeric_limits<std::int64_t>::min()), ExtValue::integer(1)),
                  ArithmeticOverflow);
}

TEST_CASE("modes never mix") {
  CHECK_THROWS_AS(ext_add(ExtValue::integer(1), ExtValue::real(1.0)), ModeMismatch);
  CHECK_THROWS_AS((void)(ExtValue::integer(1) < ExtValue::real(2.0)), ModeMismatch);
  CHECK_THROWS_AS(SetFn(1, Mode::Int, {ExtValue::integer(0), ExtValue::real(1.0)}), ModeMismatch);
  CHECK_THROWS_AS(ExtValue::real(std::numeric_limits<double>::infinity()), PreconditionViolation);
}

TEST_CASE("ordering puts NEG_INF below everything") {
  CHECK(ExtValue::neg_inf() < ExtValue::integer(-1000000));
  CHECK(ExtValue::neg_inf() < ExtValue::real(-1e300));
  CHECK(ExtValue::neg_inf() == ExtValue::neg_inf());
  CHECK(ExtValue::neg_inf() <= ExtValue::neg_inf());
  CHECK(ExtValue::integer(-2) < ExtValue::integer(3));
}

TEST_CASE("max_over") {
  CHECK(max_over({}).is_neg_inf());
  const std::vector<ExtValue> mixed{ExtValue::neg_inf(), ExtValue::integer(1), ExtValue::integer(-4)};
  CHECK(max_over(mixed) == ExtValue::integer(1));
  const std::vector<ExtValue> none{ExtValue::neg_inf(), ExtValue::neg_inf()};
  CHECK(max_over(none).is_neg_inf());
  const std::vector<ExtValue> one{ExtValue::integer(7)};
  CHECK(max_over(one) == ExtValue::integer(7));
}

TEST_CASE("tolerant comparison in real mode") {
  CHECK(ext_leq(ExtValue::real(1.0 + 1e-12), ExtValue::real(1.0)));
  CHECK_FALSE(ext_leq(ExtValue::real(1.0 + 1e-6), ExtValue::real(1.0)));
  // Relative scale for large magnitudes.
  CHECK(ext_equal(ExtValue::real(1e12), ExtValue::real(1e12 + 1e2)));
  CHECK_FALSE(ext_equal(ExtValue::real(1e12), ExtValue::real(1e12 + 1e4)));
  CHECK(ext_leq(ExtValue::neg_inf(), ExtValue::neg_inf()));
  CHECK_FALSE(ext_leq(ExtValue::integer(0), ExtValue::neg_inf()));
  CHECK_FALSE(ext_leq(ExtValue::integer(1), ExtValue::integer(0)));
}

TEST_CASE("subset helpers") {
  CHECK(bit_of(1) == 1u);
  CHECK(bit_of(3) == 4u);
  CHECK(cardinality(S({1, 3, 4})) == 3);
  CHECK(min_element(S({3, 5})) == 3);
  CHECK(to_elements(S({2, 4})) == std::vector<int>{2, 4});
  const std::vector<int> elems{4, 1};
  CHECK(from_elements(elems, 4) == S({1, 4}));
  const std::vector<int> outside{5};
  CHECK_THROWS(from_elements(outside, 4));
  CHECK(format_subset(S({1, 3})) == "{1,3}");
  CHECK(format_subset(0) == "{}");

  std::vector<Subset> seen;
  for_each_submask(S({1, 3}), [&](Subset s) { seen.push_back(s); });
  CHECK(seen == std::vector<Subset>{0, S({1}), S({3}), S({1, 3})});

  CHECK(scatter_bits(0b101, S({2, 4, 7})) == S({2, 7}));
}

TEST_CASE("size_lex_less orders by size then element list") {
  CHECK(size_lex_less(0, S({1})));
  CHECK(size_lex_less(S({3}), S({1, 2})));
  CHECK(size_lex_less(S({1, 4}), S({2, 3})));
  CHECK(size_lex_less(S({1, 2}), S({1, 3})));
  CHECK_FALSE(size_lex_less(S({2, 3}), S({1, 4})));
  CHECK_FALSE(size_lex_less(S({2}), S({2})));
}

TEST_CASE("SetFn construction guards") {
  CHECK_THROWS_AS(SetFn(2, Mode::Int, std::vector<ExtValue>(3, ExtValue::integer(0))), DimensionMismatch);
  CHECK_THROWS_AS(SetFn::constant(25, ExtValue::integer(0), Mode::Int), CapExceeded);
  CHECK_THROWS_AS(SetFn::constant(-1, ExtValue::integer(0), Mode::Int), PreconditionViolation);
  CHECK(SetFn::all_neg_inf(3, Mode::Int).dom_empty());
  const SetFn f = SetFn::constant(2, ExtValue::integer(0), Mode::Int);
  CHECK_THROWS(f.at(4));
  CHECK_THROWS(f.with_value(4, ExtValue::integer(1)));
}

TEST_CASE("effective_domain") {
  const SetFn zero = SetFn::constant(2, ExtValue::integer(0), Mode::Int);
  CHECK(effective_domain(zero) == std::vector<Subset>{0, S({1}), S({2}), S({1, 2})});
  const SetFn single = table(2, {X, 0, X, X});
  CHECK(effective_domain(single) == std::vector<Subset>{S({1})});
  CHECK(effective_domain(SetFn::all_neg_inf(2, Mode::Int)).empty());
}

TEST_CASE("tilt") {
  const SetFn zero = SetFn::constant(2, ExtValue::integer(0), Mode::Int);
  const SetFn t = tilt(zero, PriceVector::from_ints({1, -1}));
  CHECK(t == table(2, {0, -1, 1, 0}));
  CHECK(tilt(zero, PriceVector::zeros(2, Mode::Int)) == zero);
  const SetFn holes = table(2, {0, X, 2, 3});
  CHECK(tilt(holes, PriceVector::from_ints({5, 6}))(S({1})).is_neg_inf());
  CHECK_THROWS_AS(tilt(zero, PriceVector::from_ints({1, 2, 3})), DimensionMismatch);
  CHECK_THROWS_AS(tilt(zero, PriceVector::from_reals(std::vector<double>{1.0, 2.0})), ModeMismatch);
}

TEST_CASE("restrict_by_size") {
  const SetFn zero = SetFn::constant(2, ExtValue::integer(0), Mode::Int);
  CHECK(restrict_by_size(zero, 1) == table(2, {0, 0, 0, X}));
  CHECK(restrict_by_size(zero, 2) == zero);
  CHECK(restrict_by_size(zero, 0) == table(2, {0, X, X, X}));
}

TEST_CASE("cardinality range and spread") {
  const SetFn f = table(3, {X, 1, 4, X, -2, X, X, X});
  const auto range = dom_cardinality_range(f);
  CHECK(range.min == 1);
  CHECK(range.max == 1);
  CHECK(spread(f) == ExtValue::integer(6));
  CHECK(spread(table(1, {X, 3})) == ExtValue::integer(0));
  CHECK_THROWS_AS(dom_cardinality_range(SetFn::all_neg_inf(2, Mode::Int)), EmptyDomain);
}

TEST_CASE("to_real keeps values and holes") {
  const SetFn r = to_real(table(1, {X, 3}));
  CHECK(r.mode() == Mode::Real);
  CHECK(r(0).is_neg_inf());
  CHECK(r(1) == ExtValue::real(3.0));
}

TEST_CASE("price vectors") {
  const auto p = PriceVector::from_ints({1, -2, 3});
  const auto q = PriceVector::from_ints({0, 0, 5});
  CHECK(p[2] == ExtValue::integer(-2));
  CHECK(p.eval(S({1, 2})) == ExtValue::integer(-1));
  CHECK(p.eval(0) == ExtValue::integer(0));
  CHECK(join(p, q) == PriceVector::from_ints({1, 0, 5}));
  CHECK(meet(p, q) == PriceVector::from_ints({0, -2, 3}));
  CHECK(-p == PriceVector::from_ints({-1, 2, -3}));
  CHECK(p + q == PriceVector::from_ints({1, -2, 8}));
  CHECK(dominates(join(p, q), p));
  CHECK_FALSE(dominates(p, q));
  CHECK(PriceVector::unit(3, 2, Mode::Int) == PriceVector::from_ints({0, 1, 0}));
  CHECK_THROWS(PriceVector::unit(3, 4, Mode::Int));
  CHECK_THROWS_AS(join(p, PriceVector::from_ints({1})), DimensionMismatch);
}
