#!/usr/bin/env python3
# Copyright (c) 2026 The kvqe Authors.
# SPDX-License-Identifier: Apache-2.0
"""Regenerate the frozen KINT reference files shipped under refdata/.

Runs k-point restricted Hartree-Fock with Gaussian density fitting (PySCF,
STO-3G) on hydrogen chains, rotates the integrals into the crystalline-orbital
basis and writes KINT JSON plus manifest.json. Reference energies (HF, FCI) are
recomputed here from the written integrals so they agree with the C++ toolkit
to round-off; MP2/CCSD/EOM values come straight from PySCF.

This is a one-shot data script, not part of the build. Usage:
    python3 refdata/generate.py [--only NAME ...]
"""

import argparse
import hashlib
import json
import os
import sys

import numpy as np
import scipy.sparse
import scipy.sparse.linalg

HERE = os.path.dirname(os.path.abspath(__file__))
VACUUM = 12.0
FORMAT_VERSION = 1


# ---------------------------------------------------------------- integrals


def build_cell(positions, L):
    from pyscf.pbc import gto
    cell = gto.Cell()
    cell.unit = "B"
    cell.a = np.diag([L, VACUUM, VACUUM])
    cell.atom = [["H", (x, VACUUM / 2, VACUUM / 2)] for x in positions]
    cell.basis = "sto-3g"
    cell.dimension = 1
    cell.low_dim_ft_type = "inf_vacuum"
    cell.verbose = 0
    cell.build()
    return cell


def fix_gauge(c):
    """Largest-magnitude AO coefficient of every MO real and positive."""
    c = c.copy()
    for j in range(c.shape[1]):
        i = int(np.argmax(np.abs(c[:, j]) - 1e-8 * np.arange(c.shape[0])))
        c[:, j] *= np.conj(c[i, j]) / abs(c[i, j])
    return c


def canonical_key(key):
    kp, p, kq, q, kr, r, ks, s = key
    a, b, c, d = (kp, p), (kq, q), (kr, r), (ks, s)
    orbit = [(a, b, c, d), (b, a, d, c), (c, d, a, b), (d, c, b, a)]
    best = min(orbit)
    return tuple(x for pair in best for x in pair)


def image_keys(key):
    kp, p, kq, q, kr, r, ks, s = key
    a, b, c, d = (kp, p), (kq, q), (kr, r), (ks, s)
    # (key, conjugate?)
    return [((a, b, c, d), False), ((b, a, d, c), True),
            ((c, d, a, b), False), ((d, c, b, a), True)]


def run_pyscf(job):
    from pyscf.pbc import scf, tools, cc

    L = job["L"]
    nk = job["nk"]
    shift = job.get("shift", 0.0)
    cell = build_cell(job["positions"], L)
    kpts = cell.make_kpts([nk, 1, 1], scaled_center=[shift / nk, 0, 0])
    mf = scf.KRHF(cell, kpts).density_fit()
    mf.exxdiv = "ewald"
    mf.conv_tol = 1e-12
    mf.kernel()
    if not mf.converged:
        raise RuntimeError("SCF did not converge for " + job["name"])

    nmo = cell.nao_nr()
    nocc = cell.nelectron // 2
    hcore = mf.get_hcore()
    coeffs = [fix_gauge(np.asarray(c)) for c in mf.mo_coeff]
    t = np.array([c.conj().T @ h @ c for c, h in zip(coeffs, hcore)])
    t = 0.5 * (t + t.conj().transpose(0, 2, 1))

    eri = {}
    for kp in range(nk):
        for kq in range(nk):
            for kr in range(nk):
                ks = (kp - kq + kr) % nk
                block = mf.with_df.ao2mo(
                    [coeffs[kp], coeffs[kq], coeffs[kr], coeffs[ks]],
                    [kpts[kp], kpts[kq], kpts[kr], kpts[ks]],
                    compact=False).reshape(nmo, nmo, nmo, nmo) / nk
                for p in range(nmo):
                    for q in range(nmo):
                        for r in range(nmo):
                            for s in range(nmo):
                                eri[(kp, p, kq, q, kr, r, ks, s)] = complex(
                                    block[p, q, r, s])

    # Average each symmetry orbit so the stored representative is exact.
    unique = {}
    max_asym = 0.0
    for key in eri:
        ck = canonical_key(key)
        if ck in unique:
            continue
        vals = []
        for (a, b, c, d), conj in image_keys(ck):
            k2 = (*a, *b, *c, *d)
            v = eri[k2]
            vals.append(np.conj(v) if conj else v)
        mean = np.mean(vals)
        max_asym = max(max_asym, max(abs(v - mean) for v in vals))
        if abs(mean) > 1e-14:
            unique[ck] = mean

    madelung = tools.madelung(cell, kpts)
    nelec = 2 * nocc * nk
    integrals = {
        "n_orb": nmo,
        "n_k": nk,
        "shift": shift,
        "n_elec": nelec,
        "L_bohr": L,
        "e_const": nk * cell.energy_nuc() - 0.5 * madelung * nelec,
        "madelung": madelung,
        "t": t,
        "v": unique,
    }
    extra = {
        "pyscf_hf_per_cell": mf.e_tot,
        "pyscf_madelung": madelung,
        "gdf_max_symmetry_defect": max_asym,
    }
    for k in range(nk):
        for p in range(nmo):
            extra["hf_band_k%d_p%d" % (k, p)] = float(mf.mo_energy[k][p])

    if job.get("mp2", True):
        from pyscf.pbc import mp
        emp2 = mp.KMP2(mf).run().e_corr
        extra["mp2"] = nk * (mf.e_tot + emp2)
    if job.get("ccsd", True):
        mycc = cc.KRCCSD(mf)
        mycc.conv_tol = 1e-9
        mycc.kernel()
        extra["ccsd"] = nk * (mf.e_tot + mycc.e_corr)
        if job.get("eom", False):
            gaps = {}
            for k in range(nk):
                eip, _ = mycc.ipccsd(nroots=1, kptlist=[k])
                eea, _ = mycc.eaccsd(nroots=1, kptlist=[k])
                eip = float(np.real(np.ravel(eip)[0]))
                eea = float(np.real(np.ravel(eea)[0]))
                extra["eom_ip_k%d" % k] = eip
                extra["eom_ea_k%d" % k] = eea
                gaps[k] = eip + eea + madelung
                extra["eom_gap_k%d" % k] = gaps[k]
            kbest = min(gaps, key=gaps.get)
            extra["eom_direct_gap"] = gaps[kbest]
            extra["eom_direct_gap_k"] = float(kbest)
    return integrals, extra


# ------------------------------------------------------------- references


def expand_v(v):
    full = {}
    for key, val in v.items():
        for (a, b, c, d), conj in image_keys(key):
            full[(*a, *b, *c, *d)] = np.conj(val) if conj else val
    return full


def hf_energy(ints):
    nk, norb, nelec = ints["n_k"], ints["n_orb"], ints["n_elec"]
    nocc = nelec // (2 * nk)
    v = expand_v(ints["v"])
    e = ints["e_const"]
    for k in range(nk):
        for i in range(nocc):
            e += 2 * ints["t"][k][i][i].real
    for ki in range(nk):
        for kj in range(nk):
            for i in range(nocc):
                for j in range(nocc):
                    e += 2 * v.get((ki, i, ki, i, kj, j, kj, j), 0).real
                    e -= v.get((ki, i, kj, j, kj, j, ki, i), 0).real
    return e


def hf_bands(ints):
    """Koopmans band energies: Fock diagonal, occupied shifted by -madelung."""
    nk, norb, nelec = ints["n_k"], ints["n_orb"], ints["n_elec"]
    nocc = nelec // (2 * nk)
    v = expand_v(ints["v"])
    out = {}
    for k in range(nk):
        for p in range(norb):
            f = ints["t"][k][p][p]
            for kj in range(nk):
                for j in range(nocc):
                    f += 2 * v.get((k, p, k, p, kj, j, kj, j), 0)
                    f -= v.get((k, p, kj, j, kj, j, k, p), 0)
            shift = -ints["madelung"] if p < nocc else 0.0
            out["hf_band_k%d_p%d" % (k, p)] = f.real + shift
    return out


def spin_orbital_terms(ints):
    nk, norb = ints["n_k"], ints["n_orb"]

    def q(k, p, s):
        return k * 2 * norb + 2 * p + s

    terms = []
    for k in range(nk):
        for p in range(norb):
            for r in range(norb):
                c = ints["t"][k][p][r]
                if abs(c) < 1e-14:
                    continue
                for s in (0, 1):
                    terms.append(([(q(k, p, s), 1), (q(k, r, s), 0)], c))
    for (kp, p, kq, q_, kr, r, ks, s_), val in expand_v(ints["v"]).items():
        for sg in (0, 1):
            for tau in (0, 1):
                P, Q = q(kp, p, sg), q(kq, q_, sg)
                R, S = q(kr, r, tau), q(ks, s_, tau)
                if P == R or Q == S:
                    continue
                terms.append(([(P, 1), (R, 1), (S, 0), (Q, 0)], 0.5 * val))
    return terms


def popcount(a):
    return np.bitwise_count(a.astype(np.uint64)).astype(np.int64)


def sector_dets(nqubit, nalpha, nbeta):
    dets = []
    for b in range(1 << nqubit):
        na = bin(b & int("01" * (nqubit // 2), 2)).count("1")
        nb = bin(b).count("1") - na
        if na == nalpha and nb == nbeta:
            dets.append(b)
    return np.array(dets, dtype=np.int64)


def sector_matrix(ints, nalpha, nbeta):
    nq = 2 * ints["n_orb"] * ints["n_k"]
    dets = sector_dets(nq, nalpha, nbeta)
    rows, cols, vals = [], [], []
    for factors, coeff in spin_orbital_terms(ints):
        state = dets.copy()
        amp = np.ones(len(dets), dtype=np.complex128) * coeff
        ok = np.ones(len(dets), dtype=bool)
        for idx, dag in reversed(factors):
            bit = np.int64(1) << np.int64(idx)
            occ = (state & bit) != 0
            ok &= (~occ) if dag else occ
            sign = 1 - 2 * (popcount(state & (bit - 1)) % 2)
            amp = amp * sign
            state = state ^ bit
        sel = np.nonzero(ok)[0]
        if len(sel) == 0:
            continue
        target = np.searchsorted(dets, state[sel])
        rows.append(target)
        cols.append(sel)
        vals.append(amp[sel])
    n = len(dets)
    h = scipy.sparse.coo_matrix(
        (np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
        shape=(n, n)).tocsr()
    return h + scipy.sparse.identity(n) * ints["e_const"]


def lowest(h):
    n = h.shape[0]
    if n <= 2000:
        return float(np.linalg.eigvalsh(h.toarray())[0])
    w = scipy.sparse.linalg.eigsh(h, k=1, which="SA", tol=1e-13)[0]
    return float(w[0])


def fci_energy(ints):
    ne = ints["n_elec"]
    return lowest(sector_matrix(ints, ne // 2, ne // 2))


# -------------------------------------------------------------- writing


def kint_json(ints, refs, meta_note):
    t = [[[[float(z.real), float(z.imag)] for z in row] for row in tk]
         for tk in ints["t"]]
    v = [{"kp": k[0], "p": k[1], "kq": k[2], "q": k[3], "kr": k[4],
          "r": k[5], "ks": k[6], "s": k[7],
          "re": float(val.real), "im": float(val.imag)}
         for k, val in sorted(ints["v"].items())]
    return {
        "meta": {
            "n_orb": ints["n_orb"], "n_k": ints["n_k"],
            "shift": ints["shift"], "n_elec": ints["n_elec"],
            "L_bohr": ints["L_bohr"], "e_const": ints["e_const"],
            "madelung": ints["madelung"],
        },
        "t": t,
        "v": v,
        "refs": refs,
        "refs_meta": meta_note,
    }


def chain_job(name, R, nk, **kw):
    return dict(name=name, system="hchain_nk%d" % nk, positions=[0.0, R],
                L=2 * R, nk=nk, label="R%.2f" % R,
                desc="uniform H chain, 2 atoms/cell, bond %.2f Bohr, %d k-points" % (R, nk), **kw)


JOBS = (
    [chain_job("hchain_nk3_R%.2f" % R, R, 3) for R in (1.0, 1.4, 1.8, 2.0, 2.6, 3.2, 4.0)]
    + [chain_job("hchain_nk4_R%.2f" % R, R, 4, eom=False) for R in (2.0, 4.5)]
    + [dict(name="dimer_nk2_shift", system="dimer_nk2", positions=[0.0, 1.2], L=5.2,
            nk=2, shift=0.25, label="shift0.25", eom=True,
            desc="H2 dimer chain, intra 1.2 / inter 4.0 Bohr, 2 k-points shifted by 1/4 spacing (kL = pi/4, 5pi/4)")]
)


def synthetic_free():
    nk, norb = 3, 2
    t = np.zeros((nk, norb, norb), dtype=np.complex128)
    for k in range(nk):
        c = np.cos(2 * np.pi * k / nk)
        t[k, 0, 0] = -1.0 - 0.2 * c
        t[k, 1, 1] = 0.5 + 0.3 * c
    return {"n_orb": norb, "n_k": nk, "shift": 0.0, "n_elec": 2 * nk,
            "L_bohr": 3.0, "e_const": 0.3, "madelung": 0.0, "t": t, "v": {}}


def synthetic_toy():
    t = np.array([[[-1.0 + 0j]]])
    return {"n_orb": 1, "n_k": 1, "shift": 0.0, "n_elec": 2, "L_bohr": 2.0,
            "e_const": 0.1, "madelung": 0.0, "t": t,
            "v": {(0, 0, 0, 0, 0, 0, 0, 0): 0.5 + 0j}}


def write_entry(manifest, system, label, desc, ints, refs, note, tolerances):
    rel = os.path.join(system, label + ".kint.json")
    path = os.path.join(HERE, rel)
    os.makedirs(os.path.dirname(path), exist_ok=True)
    doc = kint_json(ints, refs, note)
    with open(path, "w") as f:
        json.dump(doc, f, indent=1)
        f.write("\n")
    with open(path, "rb") as f:
        digest = hashlib.sha256(f.read()).hexdigest()
    manifest[rel] = {
        "sha256": digest,
        "description": desc,
        "n_qubits": 2 * ints["n_orb"] * ints["n_k"],
        "expected": {k: {"value": refs[k], "tol": tolerances.get(k, 1e-8)}
                     for k in ("hf", "fci") if k in refs},
    }
    print("wrote", rel, {k: refs[k] for k in ("hf", "fci") if k in refs}, flush=True)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--only", nargs="*")
    args = ap.parse_args()

    mpath = os.path.join(HERE, "manifest.json")
    manifest = {}
    if os.path.exists(mpath):
        with open(mpath) as f:
            manifest = json.load(f).get("files", {})

    def wanted(name):
        return not args.only or name in args.only

    for job in JOBS:
        if not wanted(job["name"]):
            continue
        ints, extra = run_pyscf(job)
        refs = {"hf": hf_energy(ints), "fci": fci_energy(ints)}
        bands = hf_bands(ints)
        for k, val in extra.items():
            if k.startswith(("mp2", "ccsd", "eom", "hf_band")):
                refs[k] = val
        defect = max(abs(bands[k] - refs[k]) for k in bands)
        if defect > 1e-7:
            print("warning: band mismatch", defect)
        note = ("energies are for the n_k-cell Born-von Karman supercell; "
                "e_const = n_k*E_nuc - madelung*n_elec/2; sector constant for charge q "
                "adds madelung*q*(q-1)/2; hf_band_* are pyscf Ewald-corrected "
                "mo_energy; eom_gap_k* = ip + ea + madelung; pyscf KRHF e_tot per cell %.12f; "
                "pyscf madelung %.12f; GDF symmetry defect %.2e; eom values are "
                "pyscf EOM-KRCCSD (no Madelung shift)" % (
                    extra["pyscf_hf_per_cell"], extra["pyscf_madelung"],
                    extra["gdf_max_symmetry_defect"]))
        if abs(refs["hf"] - ints["n_k"] * extra["pyscf_hf_per_cell"]) > 1e-7:
            print("warning: HF mismatch", refs["hf"], ints["n_k"] * extra["pyscf_hf_per_cell"])
        write_entry(manifest, job["system"], job["label"], job["desc"], ints,
                    refs, note, {})

    for name, fn, desc in (("free_nk3", synthetic_free,
                            "synthetic non-interacting two-band model, 3 k-points"),
                           ("toy_gamma", synthetic_toy,
                            "synthetic single-orbital Gamma-only toy")):
        if not wanted(name):
            continue
        ints = fn()
        refs = {"hf": hf_energy(ints), "fci": fci_energy(ints)}
        refs.update(hf_bands(ints))
        write_entry(manifest, "synthetic", name, desc, ints, refs,
                    "synthetic model, no chemistry package involved", {})

    with open(mpath, "w") as f:
        json.dump({"format_version": FORMAT_VERSION, "files": manifest}, f,
                  indent=1, sort_keys=True)
        f.write("\n")


if __name__ == "__main__":
    sys.exit(main())
