macro_rules! example {
    ($module:ident, $file:literal, $test:ident) => {
        mod $module {
            include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/", $file));
        }

        #[test]
        fn $test() {
            $module::run_example().expect(concat!($file, " should run"));
        }
    };
}

example!(supernatural_lattice, "supernatural_lattice.rs", supernatural_lattice_runs);
example!(patch_membership, "patch_membership.rs", patch_membership_runs);
example!(covering_sieves, "covering_sieves.rs", covering_sieves_runs);
example!(point_certificates, "point_certificates.rs", point_certificates_runs);
example!(trivializing, "trivializing.rs", trivializing_runs);
example!(towers_and_limits, "towers_and_limits.rs", towers_and_limits_runs);
example!(poset_embedding, "poset_embedding.rs", poset_embedding_runs);
example!(matrix_tower, "matrix_tower.rs", matrix_tower_runs);
example!(skolem_noether, "skolem_noether.rs", skolem_noether_runs);
example!(representations, "representations.rs", representations_runs);
example!(oracle_crosscheck, "oracle_crosscheck.rs", oracle_crosscheck_runs);
