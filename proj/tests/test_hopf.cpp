#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "uzsl2/hopf.hpp"

using namespace uzsl2;

TEST_CASE("coproduct images") {
    SECTION("z=0: all three are primitive") {
        const GeneratorTriple t = build_deformed_generators({0.0, -2.0, 3});
        const CoproductImages cp = coproduct_images(t);
        const ComplexMatrix eye = ComplexMatrix::identity(3);
        CHECK(distance_max(cp.dJ0, kronecker(eye, t.J0) + kronecker(t.J0, eye)) == 0.0);
        CHECK(distance_max(cp.dJminus, kronecker(eye, t.Jminus) + kronecker(t.Jminus, eye)) ==
              0.0);
    }
    SECTION("homomorphism: [D(J+), D(J-)] = D(J0) at d=2, z=1") {
        const GeneratorTriple t = build_deformed_generators({1.0, -1.0, 2});
        const CoproductImages cp = coproduct_images(t);
        CHECK(distance_frobenius(commutator(cp.dJplus, cp.dJminus), cp.dJ0) < 1e-12);
    }
    SECTION("deformed relation through Delta at d=3, z=0.7") {
        const GeneratorTriple t = build_deformed_generators({0.7, -2.0, 3});
        const CoproductImages cp = coproduct_images(t);
        const ComplexMatrix rhs = cp.dJminus * Complex{-2.0, 0.0} +
                                  cp.dJ0 * cp.dJ0 * Complex{0.7, 0.0};
        CHECK(distance_frobenius(commutator(cp.dJ0, cp.dJminus), rhs) <
              1e-11 * std::max(1.0, rhs.frobenius_norm()));
    }
    SECTION("all three relations for d <= 6") {
        for (std::size_t d = 2; d <= 6; ++d)
            for (double z : {0.5, 2.5}) {
                const GeneratorTriple t = build_deformed_generators({z, 1.0 - double(d), d});
                const VerificationReport rep = verify_coproduct_homomorphism(t, 1e-10);
                INFO("d=" << d << " z=" << z);
                for (const auto& c : rep.checks) {
                    INFO(c.name << " residual " << c.residual);
                    CHECK(c.passed);
                }
            }
    }
}

TEST_CASE("Hopf axioms") {
    SECTION("antipode axiom on the primitive generator is exact") {
        const GeneratorTriple t = build_deformed_generators({1.0, -1.0, 2});
        const AntipodeImages g = antipode_images(t);
        CHECK(distance_max(t.Jplus + g.gJplus, ComplexMatrix(2, 2)) == 0.0);
    }
    SECTION("antipode axiom on J0: J0 - J0 e^{-2zJ+} e^{2zJ+} = 0 at d=2, z=1") {
        const GeneratorTriple t = build_deformed_generators({1.0, -1.0, 2});
        const ComplexMatrix lhs =
            t.J0 - t.J0 * matrix_exponential(t.Jplus * Complex{-2.0, 0.0}) *
                       matrix_exponential(t.Jplus * Complex{2.0, 0.0});
        CHECK(lhs.frobenius_norm() < 1e-13);
    }
    SECTION("PT invariance of Delta(J-) at d=3, z=2.5") {
        const GeneratorTriple t = build_deformed_generators({2.5, -2.0, 3});
        const CoproductImages cp = coproduct_images(t);
        CHECK(distance_frobenius(pt_transform_tensor(cp.dJminus, 3), cp.dJminus) <
              1e-12 * std::max(1.0, cp.dJminus.frobenius_norm()));
    }
    SECTION("full report passes for d <= 6") {
        for (std::size_t d = 2; d <= 6; ++d)
            for (double z : {0.0, 0.5, 2.5}) {
                const GeneratorTriple t = build_deformed_generators({z, 1.0 - double(d), d});
                const VerificationReport rep = verify_hopf_axioms(t, 1e-10);
                INFO("d=" << d << " z=" << z);
                for (const auto& c : rep.checks) {
                    INFO(c.name << " residual " << c.residual);
                    CHECK(c.passed);
                }
            }
    }
}
