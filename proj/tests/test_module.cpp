#include <fstream>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "sq2/module.hpp"
#include "sq2/reference_b2.hpp"
#include "sq2/steenrod.hpp"

using namespace sq2;

namespace {

std::string fixture_path(const char* name) {
    return std::string(SQ2_TEST_DIR) + "/fixtures/" + name;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in.good());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// 1 and Sq1: the height-0 subalgebra as a module over anything containing Sq1
const char* kTwoCell = R"(2

0 1

0 1 1 1
)";

}  // namespace

TEST_CASE("definition text parses and rewrites stably") {
    FiniteModule m = parse_bruner(kTwoCell);
    CHECK(m.dim() == 2);
    CHECK(m.generator_degrees() == std::vector<int>{0, 1});
    CHECK(m.action_targets(1, 0) == std::vector<int>{1});
    CHECK(m.action_targets(1, 1).empty());
    CHECK(m.action_keys() == std::vector<int>{1});
    std::string out = write_bruner(m);
    CHECK(parse_bruner(out) == m);
    CHECK(write_bruner(parse_bruner(out)) == out);
}

TEST_CASE("parse errors carry line diagnostics") {
    CHECK_THROWS_AS(parse_bruner("2\n\n0 1\n\n0 1 1 5\n"), std::runtime_error);   // bad index
    CHECK_THROWS_AS(parse_bruner("2\n\n0 1\n\n0 2 1 1\n"), std::runtime_error);   // bad degree
    CHECK_THROWS_AS(parse_bruner("2\n\n0 1\n\n0 1 1 1\n0 1 1 1\n"),
                    std::runtime_error);                                          // duplicate row
    CHECK_THROWS_AS(parse_bruner("2\n\n0\n"), std::runtime_error);                // short degree list
}

TEST_CASE("canonical algebra modules validate") {
    FiniteModule a1 = canonical_algebra_module(Profile::An(1));
    CHECK(a1.dim() == 8);
    CHECK(validate(a1).empty());

    FiniteModule a2 = canonical_algebra_module(Profile::An(2));
    CHECK(a2.dim() == 64);
    CHECK(a2.max_degree() == 23);
    CHECK(validate(a2).empty());

    // erasing one action row breaks the relations
    FiniteModule broken = a1;
    bool erased = false;
    for (int g = 0; g < broken.dim() && !erased; ++g)
        if (!broken.action_targets(2, g).empty()) {
            broken.set_action(2, g, {});
            erased = true;
        }
    REQUIRE(erased);
    CHECK_FALSE(validate(broken).empty());
}

TEST_CASE("ladder fixture is a module over the height-1 subalgebra only") {
    FiniteModule m = parse_bruner(read_file(fixture_path("example_a1.mod")));
    CHECK(m.dim() == 8);
    CHECK(m.generator_degrees() == std::vector<int>{0, 1, 2, 3, 3, 4, 5, 6});

    m.set_profile(Profile::An(1));
    CHECK(validate(m).empty());
    for (const auto& [degree, dim] : margolis_homology(m, 0)) CHECK(dim == 0);

    // the stored actions do not extend to the whole algebra as written:
    // Sq2 Sq3 is nonzero on the bottom class but Sq5 and Sq4 Sq1 vanish
    FiniteModule whole = m;
    whole.set_profile(Profile::A());
    CHECK_FALSE(validate(whole).empty());

    // and it is not a relabeling of the subalgebra's own left module
    CHECK_FALSE(find_generator_permutation(m, canonical_algebra_module(Profile::An(1))).has_value());
}

TEST_CASE("apply_element walks words through the stored actions") {
    FiniteModule a1 = canonical_algebra_module(Profile::An(1));
    F2Vector bottom(1, {0});
    auto [d1, v1] = a1.apply_element(AlgebraElement::sq(1), 0, bottom);
    CHECK(d1 == 1);
    CHECK(v1.popcount() == 1);
    // unit fixes everything
    auto [d0, v0] = a1.apply_element(AlgebraElement::one(), 0, bottom);
    CHECK(d0 == 0);
    CHECK(v0 == bottom);
    // Q_1 = Sq3 + Sq2 Sq1 annihilates the top of no height-1 free module
    auto [d3, v3] = a1.apply_element(milnor_primitive(1), 0, bottom);
    CHECK(d3 == 3);
    CHECK_FALSE(v3.is_zero());
    // zero acts as zero
    auto [dz, vz] = a1.apply_element(AlgebraElement::zero(), 0, bottom);
    CHECK(vz.is_zero());
}

TEST_CASE("tensor products") {
    FiniteModule unit(Profile::A(), {0});
    const FiniteModule& z = reference_b2();
    FiniteModule left = tensor(unit, z);
    CHECK(left.generator_degrees() == z.generator_degrees());
    auto perm = find_generator_permutation(left, z);
    CHECK(perm.has_value());

    FiniteModule e = parse_bruner(kTwoCell);
    FiniteModule ee = tensor(e, e);
    CHECK(ee.dim() == 4);
    CHECK(ee.generator_degrees() == std::vector<int>{0, 1, 1, 2});
    CHECK(validate(ee).empty());
    // Cartan: Sq1 of the top is the sum over the two middle classes -> 0,
    // Sq1 of each middle class hits the top
    CHECK(ee.action_matrix(1, 1).rows() == 1);
    CHECK(ee.action_matrix(1, 1).row(0).popcount() == 2);

    FiniteModule big = tensor(z, dual_module(z));
    CHECK(big.dim() == 1024);
    CHECK(big.min_degree() == -16);
    CHECK(big.max_degree() == 16);
}

TEST_CASE("dual and suspension") {
    const FiniteModule& z = reference_b2();
    FiniteModule dz = dual_module(z);
    CHECK(dz.dim() == 32);
    CHECK(dz.min_degree() == -16);
    FiniteModule ddz = dual_module(dz);
    CHECK(find_generator_permutation(ddz, z).has_value());

    FiniteModule shifted = suspend(z, 5);
    CHECK(shifted.min_degree() == 5);
    CHECK(shifted.max_degree() == 21);
    CHECK(shifted.action_keys() == z.action_keys());
    CHECK(find_generator_permutation(suspend(shifted, -5), z).has_value());
}

TEST_CASE("reference module restricts to the height-1 subalgebra") {
    FiniteModule r = restrict_profile(reference_b2(), Profile::An(1));
    for (int k : r.action_keys()) CHECK(k < 4);
    CHECK(validate(r).empty());
}

TEST_CASE("canonical quotient and the right-multiplication sequence") {
    FiniteModule b2 = canonical_quotient_module(2);
    CHECK(b2.dim() == 32);
    CHECK(b2.profile() == Profile::An(2));
    CHECK(validate(b2).empty());
    CHECK(b2.generator_degrees() == reference_b2().generator_degrees());

    QRightSes ses = q_right_ses(2);
    CHECK(ses.total.dim() == 64);
    CHECK(ses.quot.generator_degrees() == reference_b2().generator_degrees());
    // the image of right multiplication by Q_2 is the quotient shifted by 7
    for (int d = ses.sub.min_degree(); d <= ses.sub.max_degree(); ++d)
        CHECK(ses.sub.dim_at(d) == ses.quot.dim_at(d - 7));
    // exactness degree by degree
    for (int d = 0; d <= ses.total.max_degree(); ++d) {
        int nsub = ses.sub.dim_at(d), ntot = ses.total.dim_at(d), nquot = ses.quot.dim_at(d);
        CHECK(nsub + nquot == ntot);
        if (!ntot) continue;
        auto inc = ses.inclusion.find(d);
        auto proj = ses.projection.find(d);
        if (nsub) {
            REQUIRE(inc != ses.inclusion.end());
            CHECK(rref(inc->second).rank == nsub);
        }
        if (nquot) {
            REQUIRE(proj != ses.projection.end());
            CHECK(rref(proj->second).rank == nquot);
        }
        if (nsub && nquot) CHECK(multiply(proj->second, inc->second) == F2Matrix(nquot, nsub));
    }
    // the inclusion and projection commute with every action
    CHECK(map_violations(ses.sub, ses.total, ses.inclusion).empty());
    CHECK(map_violations(ses.total, ses.quot, ses.projection).empty());

    CHECK(q_right_ses(1).quot.dim() == 4);
}

TEST_CASE("margolis homology") {
    FiniteModule unit(Profile::A(), {0});
    auto h = margolis_homology(unit, 0);
    CHECK(h.at(0) == 1);

    // free modules are acyclic
    for (const auto& [d, dim] : margolis_homology(canonical_algebra_module(Profile::An(2)), 2))
        CHECK(dim == 0);
    for (const auto& [d, dim] : margolis_homology(canonical_algebra_module(Profile::An(1)), 0))
        CHECK(dim == 0);
}

TEST_CASE("submodule closure and quotient") {
    FiniteModule a1 = canonical_algebra_module(Profile::An(1));
    std::map<int, std::vector<F2Vector>> seeds;
    seeds[0] = {F2Vector(1, {0})};
    SubmoduleResult closure = submodule_closure(a1, seeds);
    CHECK(closure.module.dim() == 8);  // the bottom class generates everything

    // the top class spans a trivial submodule
    std::map<int, std::vector<F2Vector>> top;
    top[6] = {F2Vector(1, {0})};
    SubmoduleResult top_closure = submodule_closure(a1, top);
    CHECK(top_closure.module.dim() == 1);
    QuotientResult quot = quotient_module(a1, top_closure.basis);
    CHECK(quot.module.dim() == 7);
    CHECK(validate(quot.module).empty());
    CHECK(map_violations(a1, quot.module, [&] {
              std::map<int, F2Matrix> ms;
              for (const auto& [d, qm] : quot.maps) {
                  F2Matrix matrix(qm.dim(), qm.ambient);
                  for (int j = 0; j < qm.ambient; ++j) {
                      F2Vector e(qm.ambient, {j});
                      F2Vector image = qm.project(e);
                      for (int i : image.support()) matrix.set(i, j, true);
                  }
                  ms[d] = matrix;
              }
              return ms;
          }()).empty());
}

TEST_CASE("generator relabeling search") {
    FiniteModule m = parse_bruner(kTwoCell);
    // a permuted copy: swap the two generators by rebuilding with descending ids
    FiniteModule swapped(Profile::A(), {0, 1});
    swapped.set_action(1, 0, {1});
    CHECK(find_generator_permutation(m, swapped).has_value());

    // no relabeling between modules with different actions
    FiniteModule split(Profile::A(), {0, 1});
    CHECK_FALSE(find_generator_permutation(m, split).has_value());
}
