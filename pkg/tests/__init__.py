# ── Tests package ──
