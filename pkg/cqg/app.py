"""
CQG Toolbox — Streamlit web dashboard.

Launch with::

    cqg web                    # via CLI entry-point
    streamlit run cqg/app.py   # directly

Pick a built-in instance or upload an instance file, browse its irreps and
fusion rules, and run the invariant suite.
"""

from __future__ import annotations

import json
import tempfile
from pathlib import Path

import pandas as pd
import streamlit as st

from cqg.config.constants import (
    BUILTIN_ONPLUS,
    BUILTIN_S3,
    BUILTIN_SUQ2,
    DEFAULT_LEVEL,
    DEFAULT_ONPLUS_LEVEL,
    DEFAULT_ONPLUS_N,
    DEFAULT_Q,
    DEFAULT_SEED,
    RANDOM_SAMPLE_COUNT,
)
from cqg.core.errors import CQGError

# ─────────────────────────────────────────────────────────────────────────────
#  Page config
# ─────────────────────────────────────────────────────────────────────────────

st.set_page_config(
    page_title="CQG Toolbox",
    page_icon="🧮",
    layout="wide",
)

st.markdown("""
    <style>
        .stAppDeployButton {display:none;}
    </style>
    """, unsafe_allow_html=True)

st.title("🧮 Compact Quantum Group Toolbox")
st.markdown(
    "Choose a **truncated instance**, inspect its representation data and "
    "run the **invariant suite** on the finite window."
)


# ─────────────────────────────────────────────────────────────────────────────
#  Instance picker
# ─────────────────────────────────────────────────────────────────────────────

_SELECTORS = [
    BUILTIN_S3, "fun:s3", "dual:s3", "fun:v4", "dual:z4",
    BUILTIN_SUQ2, BUILTIN_ONPLUS, "Upload JSON…",
]


@st.cache_resource(show_spinner="Building instance…")
def _bundle(selector: str, q: float, level: int, n: int):
    from cqg.core.instances import resolve_instance

    return resolve_instance(selector, q=q, level=level, n=n, validate=False)


def _uploaded_bundle(uploaded_file):
    from cqg.core.instances import InstanceBundle
    from cqg.io.readers import parse_instance

    payload = json.loads(uploaded_file.getvalue().decode("utf-8"))
    return InstanceBundle(parse_instance(payload, uploaded_file.name))


with st.sidebar:
    st.header("Instance")
    selector = st.selectbox("Selector", _SELECTORS)
    q, n, level = DEFAULT_Q, DEFAULT_ONPLUS_N, DEFAULT_LEVEL
    if selector == BUILTIN_SUQ2:
        q = st.slider("q", min_value=0.05, max_value=1.0, value=DEFAULT_Q, step=0.05)
        level = st.number_input("Truncation level L", min_value=0, max_value=12, value=DEFAULT_LEVEL)
    elif selector == BUILTIN_ONPLUS:
        n = st.number_input("N", min_value=2, max_value=8, value=DEFAULT_ONPLUS_N)
        level = st.number_input("Truncation level L", min_value=0, max_value=6, value=DEFAULT_ONPLUS_LEVEL)

    bundle = None
    try:
        if selector == "Upload JSON…":
            uploaded = st.file_uploader("Instance file", type=["json"])
            if uploaded:
                bundle = _uploaded_bundle(uploaded)
        else:
            bundle = _bundle(selector, float(q), int(level), int(n))
    except (CQGError, ValueError) as exc:
        st.error(f"✗ {type(exc).__name__}: {exc}")


# ─────────────────────────────────────────────────────────────────────────────
#  Tabs
# ─────────────────────────────────────────────────────────────────────────────

tab_info, tab_verify, tab_about = st.tabs([
    "📐 Irreps & fusion",
    "🔍 Verify",
    "ℹ️ About",
])


# ═══════════════════════════════════════════════════════════════════════════════
#  TAB 1 — IRREPS & FUSION
# ═══════════════════════════════════════════════════════════════════════════════

with tab_info:
    if bundle is None:
        st.info("👈 Choose or upload an instance to get started.")
    else:
        from cqg.core.fusion_data import (
            character,
            fuse_characters,
            fusion_frame,
            irrep_frame,
        )
        from cqg.core.errors import TruncationOverflow

        g = bundle.data
        st.header(g.name)
        c1, c2, c3 = st.columns(3)
        c1.metric("Irreps", len(g.irreps))
        c2.metric("Basis size", f"{g.basis_size:,}")
        c3.metric("Kac type", "yes" if g.is_kac else "no")

        st.subheader("Irreps")
        st.dataframe(irrep_frame(g), width='stretch', hide_index=True)

        st.subheader("Fusion rules")
        st.dataframe(fusion_frame(g), width='stretch', hide_index=True)

        st.subheader("Fuse two characters")
        left, right, mode = st.columns(3)
        with left:
            a = st.selectbox("χ^A", g.labels, key="fuse_a")
        with right:
            b = st.selectbox("χ^B", g.labels, key="fuse_b")
        with mode:
            lossy = st.checkbox("Drop out-of-window terms", value=False)
        try:
            product = fuse_characters(g, character(g, a), character(g, b), lossy=lossy)
            st.dataframe(
                pd.DataFrame(
                    [{"irrep": k, "coefficient": complex(c).real} for k, c in product.coeffs.items() if c],
                ),
                width='stretch',
                hide_index=True,
            )
            if product.lossy:
                st.warning("⚠ Out-of-window terms were dropped.")
        except TruncationOverflow as exc:
            st.warning(f"⚠ {exc}")


# ═══════════════════════════════════════════════════════════════════════════════
#  TAB 2 — VERIFY
# ═══════════════════════════════════════════════════════════════════════════════

with tab_verify:
    st.header("Invariant Suite")

    if bundle is None:
        st.info("👈 Choose or upload an instance to get started.")
    else:
        from cqg.core.verify import CHECKS, CHECK_IDS

        col1, col2, col3 = st.columns(3)
        with col1:
            seed = st.number_input("Seed", value=DEFAULT_SEED, step=1)
        with col2:
            samples = st.number_input("Random samples", min_value=1, value=RANDOM_SAMPLE_COUNT)
        with col3:
            workers = st.number_input("Worker threads", min_value=1, max_value=16, value=1)

        all_ids = [CHECK_IDS[fn] for fn in CHECKS]
        selected = st.multiselect("Checks", all_ids, default=all_ids)

        if st.button("▶ Run selected checks", type="primary", key="btn_verify"):
            from cqg.core.verify import run_suite
            from cqg.io.reporters import write_json_report, write_text_report

            try:
                with st.spinner("Running checks…"):
                    report = run_suite(
                        bundle.data,
                        int(seed),
                        norm_oracle=bundle.norm_oracle,
                        brute_force=bundle.brute_force,
                        samples=int(samples),
                        workers=int(workers),
                        checks=selected or None,
                    )
            except CQGError as exc:
                st.error(f"✗ {type(exc).__name__}: {exc}")
                report = None

            if report is not None:
                if report.ok:
                    st.success(f"✓ All {len(report.checks)} checks passed.")
                else:
                    st.error(f"✗ {len(report.violations)} check(s) failed.")

                st.dataframe(report.to_frame(), width='stretch', hide_index=True)

                for r in report.checks:
                    if r.details is not None and len(r.details) > 0:
                        with st.expander(f"{r.check_id}: {r.check_name} — {len(r.details):,} rows"):
                            st.dataframe(r.details, width='stretch', hide_index=True)

                st.subheader("Download reports")
                dl1, dl2 = st.columns(2)
                with tempfile.TemporaryDirectory() as tmpdir:
                    json_path = write_json_report(report, Path(tmpdir) / "report.json")
                    txt_path = write_text_report(report, Path(tmpdir) / "report.txt")
                    with dl1:
                        st.download_button(
                            "📄 Download JSON report",
                            data=json_path.read_text(encoding="utf-8"),
                            file_name="cqg_report.json",
                            mime="application/json",
                        )
                    with dl2:
                        st.download_button(
                            "📝 Download text report",
                            data=txt_path.read_text(encoding="utf-8"),
                            file_name="cqg_report.txt",
                            mime="text/plain",
                        )


# ═══════════════════════════════════════════════════════════════════════════════
#  TAB 3 — ABOUT
# ═══════════════════════════════════════════════════════════════════════════════

with tab_about:
    st.header("About CQG Toolbox")
    st.markdown("""
The toolbox works on a **finite window** of irreducible representations of a
compact quantum group, given by dimensions, the eigenvalues of the modular
matrix F and a fusion table.

### Built-in instances

| Selector | Instance |
|----------|----------|
| `s3` / `fun:<group>` | Function algebra of S₃, Z_n (`z<n>`) or the Klein group (`v4`) |
| `dual:<group>` | Group-algebra dual: one-dimensional irreps indexed by group elements |
| `suq2` | SU_q(2) truncated at spin level L (non-Kac for q < 1) |
| `onplus` | Free orthogonal quantum group O_N⁺ truncated at level L |

### Check families

| Prefix | Checks |
|--------|--------|
| **fusion** | Structural data, dimension consistency, associativity, conjugation |
| **l1** | Convolution algebra: matrix units, involution, centre, β₁ |
| **l2** | Orthogonality, transport, β₂(φ) and P_q, star map, restriction |
| **oracle** | Agreement with brute-force group-algebra computations |

Expected failures (plain characters and projection separation on non-Kac
instances) are reported but do not fail the run.
""")
