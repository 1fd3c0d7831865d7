#!/usr/bin/env python3
"""Regenerates the labeled training corpus (pages/ and labels.csv).

Deterministic: the same seed always writes the same bytes.
"""
import csv
import pathlib
import random

SEED = 20240611
HERE = pathlib.Path(__file__).resolve().parent

PROVIDERS = ["acme", "zephyr", "quill", "orbit", "lumen", "tandem", "harbor", "vanta", "cobalt", "nimbus", "pico", "ridge"]
RESOURCES = ["users", "orders", "invoices", "projects", "teams", "files", "events", "payments", "tags", "comments"]
DOC_PAGES = ["docs/getting-started", "docs/authentication", "pricing", "blog/announcing-v2", "support",
             "docs/rate-limits", "about", "careers", "changelog", "terms"]


def api_host(rng, p):
    return rng.choice([f"api.{p}.example", f"{p}.example/api", f"rest.{p}.example", f"api.{p}.example/v{rng.randint(1, 3)}"])


def api_url(rng, p):
    host = api_host(rng, p)
    res = rng.choice(RESOURCES)
    shape = rng.randrange(5)
    if shape == 0:
        path = f"/{res}"
    elif shape == 1:
        path = f"/{res}/{rng.randint(10, 9999)}"
    elif shape == 2:
        path = f"/{res}/{{id}}"
    elif shape == 3:
        path = f"/{res}/:{res[:-1]}_id/{rng.choice(RESOURCES)}"
    else:
        path = f"/{res}?limit={rng.randint(5, 50)}"
    return f"https://{host}{path}"


def doc_url(rng, p):
    return f"https://www.{p}.example/{rng.choice(DOC_PAGES)}"


def other_url(rng, p):
    return rng.choice([
        f"https://github.com/{p}/{p}-python",
        f"https://github.com/{p}/api-client-js",
        f"https://status.{p}.example",
        f"https://community.{p}.example/t/{rng.randint(100, 999)}",
        f"https://www.{p}.example/docs/api/changelog",
        f"https://cdn.{p}.example/assets/logo.png",
        f"https://twitter.com/{p}dev",
    ])


def page(rng, p, index):
    """Returns (html, [(url, label)]) for one provider page."""
    parts = [f"<!DOCTYPE html>\n<html><head><title>{p.title()} API reference {index}</title></head><body>",
             f"<nav><a href=\"../index.html\">Home</a> <a href=\"https://www.{p}.example\">Website</a></nav>",
             f"<h1>{p.title()} API</h1>"]
    labels = []
    for _ in range(rng.randint(9, 13)):
        kind = rng.random()
        if kind < 0.22:
            u = api_url(rng, p)
            parts.append(f"<p>Example request:</p>\n<pre><code>curl -H \"Authorization: Bearer $TOKEN\" {u}</code></pre>")
            labels.append((u, 1))
        elif kind < 0.34:
            u = api_url(rng, p)
            parts.append(f"<p>The endpoint <code>{u}</code> returns a paginated list.</p>")
            labels.append((u, 1))
        elif kind < 0.44:
            u = api_url(rng, p)
            parts.append("<pre>{\n  \"id\": %d,\n  \"url\": \"%s\"\n}</pre>" % (rng.randint(1, 99), u))
            labels.append((u, 1))
        elif kind < 0.50:
            u = api_url(rng, p)
            parts.append(f"<p>Requests are sent to {u} over TLS.</p>")
            labels.append((u, 1))
        elif kind < 0.70:
            u = doc_url(rng, p)
            parts.append(f"<p>See <a href=\"{u}\">{u}</a> for details.</p>")
            labels.append((u, 0))
        elif kind < 0.80:
            u = other_url(rng, p)
            parts.append(f"<p>More at <a href=\"{u}\">{u}</a>.</p>")
            labels.append((u, 0))
        elif kind < 0.90:
            u = other_url(rng, p)
            parts.append(f"<pre><code>git clone {u}</code></pre>" if "github" in u else f"<p>Visit {u} anytime.</p>")
            labels.append((u, 0))
        elif kind < 0.95:
            u = doc_url(rng, p)
            parts.append(f"<p>Read {u} before you start.</p>")
            labels.append((u, 0))
        else:
            # Hard cases: API-looking link text that is just documentation.
            u = f"https://developer.{p}.example/api/v{rng.randint(1, 3)}/reference"
            parts.append(f"<p>Browse the <a href=\"{u}\">{u}</a> pages.</p>")
            labels.append((u, 0))
    parts.append("</body></html>\n")
    return "\n".join(parts), labels


def main():
    rng = random.Random(SEED)
    pages_dir = HERE / "pages"
    pages_dir.mkdir(exist_ok=True)
    for old in pages_dir.glob("*.html"):
        old.unlink()
    rows = []
    for p in PROVIDERS:
        for index in range(1, 3):
            html, labels = page(rng, p, index)
            name = f"{p}-{index}.html"
            (pages_dir / name).write_text(html, encoding="utf-8")
            seen = set()
            for url, label in labels:
                if url in seen:
                    continue
                seen.add(url)
                rows.append((f"pages/{name}", url, label))
    with open(HERE / "labels.csv", "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["page", "url", "label"])
        w.writerows(rows)


if __name__ == "__main__":
    main()
