#include <catch2/catch_amalgamated.hpp>

#include "test_helpers.hpp"
#include "uzsl2/generators.hpp"
#include "uzsl2/serialize.hpp"

using namespace uzsl2;

TEST_CASE("sl(2,R) generators on the Fock truncation") {
    SECTION("d=2, beta=-1 matrices") {
        const GeneratorTriple t = build_sl2_generators({0.0, -1.0, 2});
        CHECK(t.J0(0, 0) == Complex{-1.0});
        CHECK(t.J0(1, 1) == Complex{1.0});
        CHECK(t.Jplus(1, 0) == Complex{0.0, -1.0});
        CHECK(t.Jminus(0, 1) == Complex{0.0, 1.0});
        CHECK(t.Jminus(1, 0) == Complex{});
    }
    SECTION("[L+,L-] = L0 exactly at beta = 1-d") {
        for (std::size_t d : {2u, 3u, 5u, 9u}) {
            const GeneratorTriple t = build_sl2_generators({0.0, 1.0 - double(d), d});
            CHECK(distance_max(commutator(t.Jplus, t.Jminus), t.J0) < 1e-13);
            CHECK(distance_max(commutator(t.J0, t.Jplus), t.Jplus * Complex{2.0, 0.0}) < 1e-13);
            CHECK(distance_max(commutator(t.J0, t.Jminus), t.Jminus * Complex{-2.0, 0.0}) < 1e-13);
        }
    }
    SECTION("generic beta: commutator defect confined to the last corner") {
        const std::size_t d = 4;
        const double beta = 0.37;
        const GeneratorTriple t = build_sl2_generators({0.0, beta, d});
        const ComplexMatrix defect = commutator(t.Jplus, t.Jminus) - t.J0;
        for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j)
                if (!(i == d - 1 && j == d - 1)) CHECK(std::abs(defect(i, j)) < 1e-14);
        // magnitude (d-1)(d-2+beta) - (2(d-1)+beta)
        const double expected = (d - 1.0) * (d - 2.0 + beta) - (2.0 * (d - 1.0) + beta);
        CHECK(std::abs(defect(d - 1, d - 1) - Complex{-expected, 0.0}) < 1e-13);
    }
}

TEST_CASE("deformed generators") {
    SECTION("d=2, beta=-1 equals the closed-form matrices for any z") {
        for (double z : {0.4, 1.0, 2.5}) {
            const GeneratorTriple t = build_deformed_generators({z, -1.0, 2});
            CHECK(std::abs(t.Jplus(1, 0) - Complex{0.0, -1.0}) == 0.0);
            CHECK(std::abs(t.Jplus(0, 1)) == 0.0);
            CHECK(std::abs(t.Jminus(0, 1) - Complex{0.0, 1.0}) == 0.0);
            CHECK(std::abs(t.Jminus(1, 0) - Complex{0.0, z * z / 4.0}) < 1e-15);
            CHECK(std::abs(t.Jminus(1, 1) - Complex{z, 0.0}) < 1e-15);
            CHECK(std::abs(t.J0(0, 0) - Complex{-1.0, 0.0}) == 0.0);
            CHECK(std::abs(t.J0(1, 0) - Complex{0.0, z}) < 1e-15);
            CHECK(std::abs(t.J0(1, 1) - Complex{1.0, 0.0}) == 0.0);
        }
    }
    SECTION("z=0 returns the sl(2,R) triple bitwise") {
        for (std::size_t d : {2u, 5u}) {
            const GeneratorTriple a = build_deformed_generators({0.0, 1.0 - double(d), d});
            const GeneratorTriple b = build_sl2_generators({0.0, 1.0 - double(d), d});
            CHECK(a.J0.data() == b.J0.data());
            CHECK(a.Jplus.data() == b.Jplus.data());
            CHECK(a.Jminus.data() == b.Jminus.data());
            CHECK_FALSE(a.deformed);
        }
    }
    SECTION("d=3, beta=-2 diagonal of J0") {
        const GeneratorTriple t = build_deformed_generators({1.3, -2.0, 3});
        CHECK(t.J0(0, 0) == Complex{-2.0});
        CHECK(t.J0(1, 1) == Complex{0.0});
        CHECK(t.J0(2, 2) == Complex{2.0});
    }
    SECTION("J+ strictly lower with -i sqrt(m+1) subdiagonal") {
        const GeneratorTriple t = build_deformed_generators({2.0, -4.0, 5});
        for (std::size_t m = 0; m + 1 < 5; ++m)
            CHECK(t.Jplus(m + 1, m) == Complex{0.0, -std::sqrt(double(m + 1))});
        for (std::size_t i = 0; i < 5; ++i)
            for (std::size_t j = i; j < 5; ++j) CHECK(t.Jplus(i, j) == Complex{});
    }
}

TEST_CASE("commutation relations of the deformed algebra") {
    SECTION("irreducible triples satisfy all three relations") {
        for (std::size_t d = 2; d <= 12; ++d)
            for (double z : {0.0, 0.1, 1.0, 2.5}) {
                const GeneratorTriple t = build_deformed_generators({z, 1.0 - double(d), d});
                const VerificationReport rep = verify_commutation(t, 1e-11);
                INFO("d=" << d << " z=" << z);
                for (const auto& c : rep.checks) {
                    INFO(c.name << " residual " << c.residual);
                    CHECK(c.passed);
                }
            }
    }
    SECTION("non-integer beta: residual concentrated in the last row") {
        const GeneratorTriple t = build_deformed_generators({1.0, -1.5, 4});
        const std::vector<ComplexMatrix> maps = commutation_residual_maps(t);
        double off_last = 0.0, on_last = 0.0;
        for (const auto& m : maps)
            for (std::size_t i = 0; i < 4; ++i)
                for (std::size_t j = 0; j < 4; ++j)
                    (i == 3 ? on_last : off_last) = std::max(i == 3 ? on_last : off_last,
                                                             std::abs(m(i, j)));
        CHECK(on_last > 1e-3);
        CHECK(off_last < 1e-12 * std::max(1.0, on_last));
        CHECK_FALSE(verify_commutation(t, 1e-11).all_passed());
    }
}

TEST_CASE("PT transform") {
    SECTION("generators are PT-invariant") {
        for (std::size_t d : {2u, 5u, 8u})
            for (double z : {0.5, 2.5}) {
                const GeneratorTriple t = build_deformed_generators({z, 1.0 - double(d), d});
                CHECK(check_pt_symmetric(t.J0, 1e-15));
                CHECK(check_pt_symmetric(t.Jplus, 1e-15));
                CHECK(check_pt_symmetric(t.Jminus, 1e-15));
            }
    }
    SECTION("H_mu = mu J- + J+ is PT-invariant for real mu") {
        const GeneratorTriple t = build_deformed_generators({1.7, -3.0, 4});
        const ComplexMatrix h = t.Jminus * Complex{1.4, 0.0} + t.Jplus;
        CHECK(check_pt_symmetric(h, 1e-15));
    }
    SECTION("i I fails the check") {
        const ComplexMatrix m = ComplexMatrix::identity(3) * Complex{0.0, 1.0};
        CHECK_FALSE(check_pt_symmetric(m, 1e-12));
    }
    SECTION("applying twice is the identity") {
        const ComplexMatrix m = testutil::random_matrix(6, 321);
        CHECK(distance_max(pt_transform(pt_transform(m)), m) == 0.0);
    }
}

TEST_CASE("deformed Casimir") {
    SECTION("d=2, beta=-1 gives (3/2) I") {
        const GeneratorTriple t = build_deformed_generators({1.9, -1.0, 2});
        const ComplexMatrix c = casimir_matrix(t);
        CHECK(distance_max(c, ComplexMatrix::identity(2) * Complex{1.5, 0.0}) < 1e-13);
    }
    SECTION("d=4, beta=-3 gives (15/2) I") {
        const GeneratorTriple t = build_deformed_generators({0.8, -3.0, 4});
        const ComplexMatrix c = casimir_matrix(t);
        CHECK(distance_max(c, ComplexMatrix::identity(4) * Complex{7.5, 0.0}) < 1e-12);
    }
    SECTION("central: commutes with all generators up to d=8") {
        for (std::size_t d : {3u, 6u, 8u}) {
            const GeneratorTriple t = build_deformed_generators({1.1, 1.0 - double(d), d});
            const ComplexMatrix c = casimir_matrix(t);
            const double scale = std::max(1.0, c.frobenius_norm());
            CHECK(commutator(c, t.J0).frobenius_norm() < 1e-10 * scale * t.J0.frobenius_norm());
            CHECK(commutator(c, t.Jplus).frobenius_norm() < 1e-10 * scale);
            CHECK(commutator(c, t.Jminus).frobenius_norm() <
                  1e-10 * scale * std::max(1.0, t.Jminus.frobenius_norm()));
        }
    }
    SECTION("eigenvalue formula beta(beta/2 - 1)") {
        CHECK(casimir_eigenvalue(-1.0) == 1.5);
        CHECK(casimir_eigenvalue(-3.0) == 7.5);
    }
}

TEST_CASE("triple JSON round trip") {
    const GeneratorTriple t = build_deformed_generators({1.25, -4.0, 5});
    const json doc = triple_to_json(t);
    CHECK(doc.at("dim") == 5);
    CHECK(doc.at("irreducible") == true);
    const GeneratorTriple back = triple_from_json(doc);
    CHECK(distance_max(back.J0, t.J0) == 0.0);
    CHECK(distance_max(back.Jplus, t.Jplus) == 0.0);
    CHECK(distance_max(back.Jminus, t.Jminus) == 0.0);
    CHECK(back.spec.z == t.spec.z);
}
