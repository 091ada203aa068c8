# Script to summarise an emitted audit report.

import argparse

import pandas as pd

from qineq_audit.config import LOCAL_RESULTS_DIR


def kind_summary(report: pd.DataFrame) -> pd.DataFrame:
    """Pass/fail/malformed counts and violation rate per qualified audit kind."""
    report = report.copy()
    report["malformed"] = report["reason_code"].fillna("") == "malformed_bound"
    report["violated"] = ~report["holds"].astype(bool) & ~report["malformed"]

    grouped_stats = []
    for audit_kind, df in report.groupby("audit_kind"):
        total_count = len(df)
        violated_count = df["violated"].sum()
        malformed_count = df["malformed"].sum()
        grouped_stats.append(
            {
                "audit_kind": audit_kind,
                "total_count": total_count,
                "violated_count": violated_count,
                "violated_%": (violated_count / total_count) * 100,
                "malformed_count": malformed_count,
                "malformed_%": (malformed_count / total_count) * 100,
                "worst_margin": df["margin"].min(),
            }
        )
    grouped_stats_df = pd.DataFrame(grouped_stats)

    total_count = grouped_stats_df["total_count"].sum()
    total_violated = grouped_stats_df["violated_count"].sum()
    total_malformed = grouped_stats_df["malformed_count"].sum()
    total_row = {
        "audit_kind": "TOTAL",
        "total_count": total_count,
        "violated_count": total_violated,
        "violated_%": (total_violated / total_count) * 100,
        "malformed_count": total_malformed,
        "malformed_%": (total_malformed / total_count) * 100,
        "worst_margin": grouped_stats_df["worst_margin"].min(),
    }
    return pd.concat([grouped_stats_df, pd.DataFrame([total_row])], ignore_index=True)


def variant_summary(report: pd.DataFrame) -> pd.DataFrame:
    """How often each bound variant holds, per pairing and moment source."""
    bounds = report[report["audit_kind"].str.startswith("inequalities.")]
    return (
        bounds.groupby(
            ["audit_kind", "variant_pairing", "moment_source"], dropna=False
        )
        .agg(records=("holds", "size"), held=("holds", "sum"))
        .reset_index()
    )


def main():
    parser = argparse.ArgumentParser(description="Summarise a CSV audit report.")
    parser.add_argument(
        "report", nargs="?", default=str(LOCAL_RESULTS_DIR / "audit.csv")
    )
    args = parser.parse_args()

    report = pd.read_csv(args.report, keep_default_na=True)
    LOCAL_RESULTS_DIR.mkdir(parents=True, exist_ok=True)
    kind_summary(report).to_csv(LOCAL_RESULTS_DIR / "kind_summary.csv", index=False)
    variant_summary(report).to_csv(
        LOCAL_RESULTS_DIR / "variant_summary.csv", index=False
    )


if __name__ == "__main__":
    main()
