//! Generated reference for every artifact the CLI writes.

pub struct Artifact {
    pub file: &'static str,
    pub columns: &'static [(&'static str, &'static str)],
}

pub struct CommandDoc {
    pub command: &'static str,
    pub summary: &'static str,
    pub artifacts: &'static [Artifact],
}

const COMPRESSION: Artifact = Artifact {
    file: "compression.csv",
    columns: &[
        ("tau", "Trotter step the operators were compiled for"),
        ("operator", "T, V0 or V1"),
        ("c_lhst", "local Hilbert-Schmidt cost of the best restart"),
        ("c_hst", "global Hilbert-Schmidt cost of the same ansatz"),
        ("converged", "whether the cost reached the optimizer tolerance"),
    ],
};

pub const COMMANDS: &[CommandDoc] = &[
    CommandDoc {
        command: "compress",
        summary: "Compress a quadratic potential or kinetic propagator into W·D·W†.",
        artifacts: &[
            Artifact {
                file: "restarts.csv",
                columns: &[
                    ("seed", "optimizer seed"),
                    ("c_lhst", "final local cost"),
                    ("c_hst", "final global cost"),
                    ("iterations", "recorded optimizer iterations"),
                    ("converged", "cost reached the tolerance"),
                ],
            },
            Artifact { file: "history.csv", columns: &[("iter", "iteration"), ("cost", "cost at the iterate"), ("best_cost", "lowest cost so far")] },
            Artifact { file: "ansatz.json", columns: &[] },
            Artifact { file: "global_min.json", columns: &[] },
        ],
    },
    CommandDoc {
        command: "marcus",
        summary: "Run one two-surface dynamics simulation and fit its rate.",
        artifacts: &[
            Artifact {
                file: "trace.csv",
                columns: &[("t", "time (a.u.)"), ("p0", "reactant population"), ("p1", "product population"), ("norm", "state norm squared")],
            },
            Artifact { file: "rate.json", columns: &[] },
            COMPRESSION,
            Artifact { file: "operators.json", columns: &[] },
        ],
    },
    CommandDoc {
        command: "rate-scan",
        summary: "Fit rates over a driving-force grid for each mode and step size.",
        artifacts: &[
            Artifact {
                file: "scan.csv",
                columns: &[
                    ("dG", "driving force (a.u.)"),
                    ("k", "rate from the least-squares slope of p0 (1/a.u.)"),
                    ("residual", "RMS residual of the linear fit"),
                    ("mode", "explicit or compressed"),
                    ("tau", "Trotter step (a.u.)"),
                ],
            },
            COMPRESSION,
        ],
    },
    CommandDoc {
        command: "rates-theory",
        summary: "Classical Marcus and low-temperature Franck-Condon rate curves.",
        artifacts: &[Artifact {
            file: "theory.csv",
            columns: &[("dG", "driving force (a.u.)"), ("k_marcus", "classical Marcus rate"), ("k_fc", "Franck-Condon rate at zero temperature")],
        }],
    },
    CommandDoc {
        command: "count",
        summary: "Gate census of explicit and compressed operators against the published table.",
        artifacts: &[
            Artifact {
                file: "census.csv",
                columns: &[
                    ("n", "position qubits"),
                    ("op", "T, V0 or V1"),
                    ("l", "locality bound"),
                    ("topology", "linear or ring"),
                    ("zz_ex_reduced", "pair rotations in the commutativity-reduced explicit circuit"),
                    ("zz_ex", "explicit ZZ count in the published convention"),
                    ("zz_comp", "ZZ (or CZZ) count of the compressed D"),
                    ("rz_ex", "explicit Rz count, ZZ internals plus n"),
                    ("rz_comp", "compressed Rz count, ZZ internals plus n"),
                    ("toffoli_ex", "explicit Toffoli count (controlled operators only)"),
                    ("toffoli_comp", "compressed Toffoli count (controlled operators only)"),
                    ("max_l_ex", "largest locality in the explicit circuit"),
                    ("max_l_comp", "largest locality in the compressed D"),
                    ("mismatch", "whether any cell differs from the published row"),
                    ("mismatch_columns", "semicolon-separated differing cells"),
                ],
            },
            Artifact {
                file: "table.csv",
                columns: &[
                    ("n", "position qubits"),
                    ("op", "operator"),
                    ("l", "locality bound"),
                    ("column", "table cell name"),
                    ("published", "published value (empty when blank)"),
                    ("regenerated", "value from the constructed circuit"),
                    ("mismatch", "published differs from regenerated"),
                ],
            },
            Artifact {
                file: "truncation.csv",
                columns: &[
                    ("n", "position qubits"),
                    ("op", "operator"),
                    ("l", "locality bound"),
                    ("topology", "linear or ring"),
                    ("locality", "locality of the dropped pair terms"),
                    ("removed", "number of pair terms dropped at that locality"),
                ],
            },
            Artifact {
                file: "registers.csv",
                columns: &[("n", "position qubits"), ("pieces", "coupling pieces"), ("total_qubits", "n + 1 + (pieces − 1) + ⌈log₂ n⌉")],
            },
        ],
    },
    CommandDoc {
        command: "init-wavepacket",
        summary: "Fit the Ry/CNOT preparation circuit to a harmonic ground state.",
        artifacts: &[
            Artifact {
                file: "wavepacket.csv",
                columns: &[("k", "basis index"), ("x", "position (a.u.)"), ("target", "target amplitude"), ("prepared", "prepared amplitude")],
            },
            Artifact { file: "fit.json", columns: &[] },
        ],
    },
    CommandDoc {
        command: "fastforward-check",
        summary: "Fidelity of W·D(Nθ)·W† against N exact free-particle steps.",
        artifacts: &[
            Artifact { file: "fastforward.csv", columns: &[("N", "number of fast-forwarded steps"), ("fidelity", "state fidelity with exact evolution")] },
            Artifact { file: "ansatz.json", columns: &[] },
        ],
    },
];

/// Markdown page listing every artifact and its columns.
pub fn markdown() -> String {
    let mut s = String::from("# Artifact reference\n\nGenerated by `vffcomp columns`. Every run also writes `config.json` (the resolved config) and `manifest.json`.\n");
    for c in COMMANDS {
        s.push_str(&format!("\n## `{}`\n\n{}\n", c.command, c.summary));
        for a in c.artifacts {
            s.push_str(&format!("\n### `{}`\n", a.file));
            if a.columns.is_empty() {
                s.push_str("\nJSON document.\n");
                continue;
            }
            s.push_str("\n| column | meaning |\n|---|---|\n");
            for (name, meaning) in a.columns {
                s.push_str(&format!("| `{name}` | {meaning} |\n"));
            }
        }
    }
    s
}
