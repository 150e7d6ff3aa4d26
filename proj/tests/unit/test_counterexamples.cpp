#include <doctest.h>

#include <cmath>
#include <functional>

#include "admixid/conditions.hpp"
#include "admixid/counterexamples.hpp"
#include "admixid/equivalence.hpp"
#include "fixtures.hpp"

using namespace admixid;
using fixtures::close;
using fixtures::mat;
using fixtures::vec;

namespace {

ErrorKind kind_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error thrown");
    return ErrorKind::InvalidMatrix;
}

void check_sound(const CounterexamplePair& c) {
    const Matrix p1 = c.original.f.matrix() * c.original.q.matrix();
    const Matrix p2 = c.alternative.f.matrix() * c.alternative.q.matrix();
    CHECK((p1 - p2).cwiseAbs().maxCoeff() <= 1e-7);
    CHECK(c.product_gap <= 1e-7);
    CHECK_FALSE(are_equivalent(c.original, c.alternative).equivalent());
    CHECK_FALSE(c.certificate.empty());
}

}  // namespace

TEST_CASE("interior Q column replaced over equal F columns") {
    const FrequencyMatrix f(mat({{0.3, 0.3}, {0.7, 0.7}}));
    const AdmixtureMatrix q(mat({{1, 0, 0.5}, {0, 1, 0.5}}));
    const CounterexamplePair c = perturb_interior_q_column(f, q);
    check_sound(c);
    CHECK(c.parameters.column == Index{2});
    const Matrix& q2 = c.alternative.q.matrix();
    CHECK(std::abs(q2(0, 2) - 0.5) > 1e-8);
    CHECK(q2(0, 2) + q2(1, 2) == doctest::Approx(1.0));
    CHECK(check_anchor_q(c.alternative.q).holds);
    CHECK(close(q2.leftCols(2), Matrix::Identity(2, 2)));
}

TEST_CASE("interior Q column preconditions") {
    const AdmixtureMatrix q(mat({{1, 0, 0.5}, {0, 1, 0.5}}));
    CHECK(kind_of([&] { perturb_interior_q_column(FrequencyMatrix(mat({{0, 1}, {1, 0}, {0.5, 0.5}})), q); }) ==
          ErrorKind::PreconditionViolated);
    const FrequencyMatrix f(mat({{0.3, 0.3}, {0.7, 0.7}}));
    CHECK(kind_of([&] { perturb_interior_q_column(f, AdmixtureMatrix(mat({{1, 0, 1}, {0, 1, 0}}))); }) ==
          ErrorKind::PreconditionViolated);
}

TEST_CASE("rotation matrices and inverses") {
    const Matrix r = rotation_q(2, 0, 1, 0.25);
    CHECK(close(r, mat({{1, 0.25}, {0, 0.75}})));
    CHECK(close(rotation_q_inverse(2, 0, 1, 0.25), mat({{1, -1.0 / 3}, {0, 4.0 / 3}}), 1e-15));
    CHECK(close(rotation_f(2, 0, 1, 0.25), mat({{0.75, 0}, {0.25, 1}})));
    CHECK(close(rotation_f_inverse(2, 0, 1, 0.25), mat({{4.0 / 3, 0}, {-1.0 / 3, 1}}), 1e-15));
    for (int i = 1; i <= 9; ++i) {
        const double d = 0.05 * i;
        CHECK((rotation_q(4, 0, 2, d) * rotation_q_inverse(4, 0, 2, d) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <=
              1e-12);
        CHECK((rotation_f(4, 1, 0, d) * rotation_f_inverse(4, 1, 0, d) - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() <=
              1e-12);
    }
}

TEST_CASE("Q-side rotation on the worked example") {
    const FrequencyMatrix f(mat({{1, 0.5}, {0, 0.4}, {1, 0.6}}));
    const AdmixtureMatrix q(Matrix::Identity(2, 2));
    const CounterexamplePair c = rotate_r_q(f, q, 0.4, Index{1});
    check_sound(c);
    CHECK(c.parameters.delta == 0.4);
    CHECK(c.parameters.population == Index{1});
    CHECK(c.parameters.partner == Index{0});
    CHECK(check_indep_f(c.alternative.f));
    // e_1 (index 1) is gone from the columns of R Q, e_0 stays.
    const AnchorCheck anchors = check_anchor_q(c.alternative.q);
    CHECK(anchors.witnesses[0].has_value());
    CHECK_FALSE(anchors.witnesses[1].has_value());
}

TEST_CASE("Q-side rotation chooses delta and k0 automatically") {
    const FrequencyMatrix f(mat({{1, 0.5}, {0, 0.4}, {1, 0.6}}));
    const CounterexamplePair c = rotate_r_q(f, AdmixtureMatrix(Matrix::Identity(2, 2)));
    check_sound(c);
    CHECK(c.parameters.population == Index{1});
    CHECK(*c.parameters.delta == doctest::Approx(0.2));  // half of the largest feasible 0.4
}

TEST_CASE("Q-side rotation errors") {
    const FrequencyMatrix f(mat({{1, 0.5}, {0, 0.4}, {1, 0.6}}));
    const AdmixtureMatrix q(Matrix::Identity(2, 2));
    CHECK(kind_of([&] { rotate_r_q(f, q, 0.6); }) == ErrorKind::DeltaOutOfRange);
    CHECK(kind_of([&] { rotate_r_q(f, q, 0.0); }) == ErrorKind::DeltaOutOfRange);
    CHECK(kind_of([&] { rotate_r_q(f, q, 0.45); }) == ErrorKind::NoBoundedColumn);
    CHECK(kind_of([&] { rotate_r_q(FrequencyMatrix(Matrix::Identity(2, 2)), q); }) == ErrorKind::NoBoundedColumn);
}

TEST_CASE("F row perturbation on the worked example") {
    const FrequencyMatrix f(mat({{1, 0}, {0, 1}, {0.5, 0.4}}));
    const AdmixtureMatrix q(mat({{0.5, 0.5}, {0.5, 0.5}}));
    const CounterexamplePair c = perturb_f_row(f, q);
    check_sound(c);
    CHECK(c.parameters.row == Index{2});
    // The null vector of Q is (1, -1) up to sign and scale, and the step is 0.1.
    const Matrix row = c.alternative.f.matrix().row(2);
    CHECK((close(row, mat({{0.6, 0.3}}), 1e-12) || close(row, mat({{0.4, 0.5}}), 1e-12)));
    CHECK(check_anchor_f(c.alternative.f).holds);
    CHECK(c.alternative.f.matrix().minCoeff() >= 0.0);
    CHECK(c.alternative.f.matrix().maxCoeff() <= 1.0);
}

TEST_CASE("F row perturbation preconditions") {
    const FrequencyMatrix f(mat({{1, 0}, {0, 1}, {0.5, 0.4}}));
    CHECK(kind_of([&] { perturb_f_row(f, AdmixtureMatrix(Matrix::Identity(2, 2))); }) ==
          ErrorKind::PreconditionViolated);
    const FrequencyMatrix boundary(mat({{1, 0}, {0, 1}, {1, 0.4}}));
    CHECK(kind_of([&] { perturb_f_row(boundary, AdmixtureMatrix(mat({{0.5, 0.5}, {0.5, 0.5}}))); }) ==
          ErrorKind::PreconditionViolated);
}

TEST_CASE("F-side rotation on the worked example") {
    const FrequencyMatrix f(mat({{0.8, 0}, {0, 0.6}, {0.5, 0.5}}));
    const AdmixtureMatrix q(mat({{0.4, 0.7}, {0.6, 0.3}}));
    const CounterexamplePair c = rotate_r_f(f, q, 0.3, Index{1});
    check_sound(c);
    CHECK(check_indep_q(c.alternative.q));
    const AnchorCheck anchors = check_anchor_f(c.alternative.f);
    CHECK(anchors.witnesses[0].has_value());
    CHECK_FALSE(anchors.witnesses[1].has_value());
}

TEST_CASE("F-side rotation errors") {
    const FrequencyMatrix f(mat({{0.8, 0}, {0, 0.6}, {0.5, 0.5}}));
    CHECK(kind_of([&] { rotate_r_f(f, AdmixtureMatrix(Matrix::Identity(2, 2))); }) == ErrorKind::NoBoundedRow);
    CHECK(kind_of([&] { rotate_r_f(f, AdmixtureMatrix(mat({{0.4, 0.7}, {0.6, 0.3}})), 0.5); }) ==
          ErrorKind::DeltaOutOfRange);
}

TEST_CASE("necessity of affine independence") {
    const FrequencyMatrix f(mat({{0.3, 0.3}, {0.7, 0.7}}));
    const CounterexamplePair c = necessity_pq(f, 3);
    check_sound(c);
    // p and q are the two vertices of the simplex, in either order.
    const Matrix p = c.original.q.matrix().col(0);
    const Matrix q = c.alternative.q.matrix().col(0);
    CHECK(close(p + q, vec({1, 1})));
    CHECK(std::abs(p(0) - p(1)) == doctest::Approx(1.0));
    CHECK(close(c.original.q.matrix().rightCols(2), Matrix::Identity(2, 2)));

    const CounterexamplePair wide = necessity_pq(f, 5);
    check_sound(wide);
    CHECK(close(wide.original.q.matrix().rightCols(2), mat({{1, 1}, {0, 0}})));
    CHECK(close(wide.original.q.matrix().middleCols(1, 2), Matrix::Identity(2, 2)));

    CHECK(kind_of([] { necessity_pq(FrequencyMatrix(mat({{0, 1}, {1, 0}})), 3); }) ==
          ErrorKind::PreconditionViolated);
    CHECK(kind_of([&] { necessity_pq(f, 2); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("necessity of independent Q rows") {
    const AdmixtureMatrix q(mat({{0.5, 0.5}, {0.5, 0.5}}));
    const CounterexamplePair c = necessity_f_rows(q, 4);
    check_sound(c);
    const Matrix& f1 = c.original.f.matrix();
    const Matrix& f2 = c.alternative.f.matrix();
    CHECK(close(f1, mat({{0.5, 0.5}, {1, 0}, {0, 1}, {1, 0}})));
    const double d = *c.parameters.delta;
    CHECK(std::abs(f2(0, 0) - 0.5) == doctest::Approx(0.25));
    CHECK(f2(0, 0) + f2(0, 1) == doctest::Approx(1.0));
    CHECK(d * c.parameters.direction->cwiseAbs().maxCoeff() == doctest::Approx(0.25));
    CHECK(f2.minCoeff() >= 0.0);
    CHECK(f2.maxCoeff() <= 1.0);
    CHECK(check_anchor_f(c.alternative.f).holds);

    CHECK(kind_of([] { necessity_f_rows(AdmixtureMatrix(Matrix::Identity(2, 2)), 4); }) ==
          ErrorKind::PreconditionViolated);
    CHECK(kind_of([&] { necessity_f_rows(q, 2); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("duplicate F columns in the unadmixed model") {
    const FrequencyMatrix f(mat({{0.3, 0.3}, {0.7, 0.7}}));
    const CounterexamplePair c = unadmixed_dup_column(f, 3);
    check_sound(c);
    CHECK(close(c.original.q.matrix(), mat({{1, 0, 1}, {0, 1, 0}})));
    CHECK(close(c.alternative.q.matrix(), mat({{1, 0, 0}, {0, 1, 1}})));
    CHECK(check_unadmixed(c.original.q));
    CHECK(check_unadmixed(c.alternative.q));

    CHECK(kind_of([] { unadmixed_dup_column(FrequencyMatrix(Matrix::Identity(2, 2)), 3); }) ==
          ErrorKind::NoDuplicateColumns);
    CHECK(kind_of([&] { unadmixed_dup_column(f, 2); }) == ErrorKind::PreconditionViolated);
}

TEST_CASE("missing anchor in the unadmixed model") {
    const FrequencyMatrix f(mat({{0.1, 0.9}, {0.2, 0.8}}));
    const AdmixtureMatrix q(mat({{1, 1}, {0, 0}}));
    const CounterexamplePair c = unadmixed_missing_anchor(f, q);
    check_sound(c);
    CHECK(c.parameters.population == Index{1});
    CHECK(close(c.alternative.f.matrix().col(0), f.matrix().col(0)));
    CHECK((c.alternative.f.matrix().col(1) - f.matrix().col(1)).cwiseAbs().maxCoeff() > 1e-8);
    CHECK((c.alternative.f.matrix().col(1) - f.matrix().col(0)).cwiseAbs().maxCoeff() > 1e-8);
    // 1 - F[:,1] equals F[:,0] here, so the nudge kicks in.
    CHECK(close(c.alternative.f.matrix().col(1), vec({0.2, 0.3}), 1e-12));

    CHECK(kind_of([&] { unadmixed_missing_anchor(f, AdmixtureMatrix(mat({{1, 0}, {0, 1}}))); }) ==
          ErrorKind::PreconditionViolated);
    CHECK(kind_of([&] { unadmixed_missing_anchor(f, AdmixtureMatrix(mat({{1, 0.5}, {0, 0.5}}))); }) ==
          ErrorKind::PreconditionViolated);
}

TEST_CASE("construction names") {
    for (Construction c : {Construction::QInteriorColumn, Construction::RRotationQ, Construction::FRowPerturbation,
                           Construction::RRotationF, Construction::NecessityPQ, Construction::NecessityFRows,
                           Construction::UnadmixedDupColumn, Construction::UnadmixedMissingAnchor}) {
        CHECK(parse_construction(command_name(c)) == c);
        CHECK(parse_construction(to_string(c)) == c);
    }
    CHECK(parse_construction("rotate_R_Q") == Construction::RRotationQ);
    CHECK_THROWS_AS(parse_construction("nope"), Error);
}
