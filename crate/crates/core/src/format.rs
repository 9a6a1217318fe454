//! Plain-text manifests for collections, operads, modules, Hopf objects,
//! morphisms and coalgebras.
//!
//! ```text
//! manifest := "format-version: 1" NL "kind: " KIND NL field* section*
//! field    := KEY ": " VALUE NL
//! section  := "[" NAME [" " ARG] "]" NL body
//! matrix   := ROWS " x " COLS NL row{ROWS}
//! row      := q{COLS} | "|" (" " COL ":" q)*
//! q        := INT | INT "/" INT
//! ```
//!
//! Dense rows list every entry; sparse rows start with `|` and give
//! 1-based column indices. Blank lines and lines starting with `#` are
//! ignored. Matrices are row-major; representations store one matrix per
//! Coxeter generator `s_i`. Composition shapes are written `k;n_1,..,n_k`.
//!
//! Modules, morphisms and coalgebras refer to their operads by reference:
//! a path relative to the referring file, `builtin:NAME:ARGS`, or
//! `hadamard(REF,REF)`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use crate::collections::{unit_collection, Collection, Support};
use crate::error::{Error, Result};
use crate::hopf::{group_hopf, multiplicative_z2, CoalgebraOverOperad, HopfObject};
use crate::linalg::{Matrix, SparseVec, Q};
use crate::linrep::SymRep;
use crate::modalg::{free_left_module, LeftModule};
use crate::operads::{self, hadamard_operad, Operad, OperadMorphism};
use crate::oracles::{perm_rep_of, SetSpeciesCollection};

/// Dense rows are printed up to this width, sparse rows beyond it.
const DENSE_WIDTH: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleManifest {
    pub operad_ref: String,
    pub module: LeftModule,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismManifest {
    pub source_ref: String,
    pub target_ref: String,
    pub morphism: OperadMorphism,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoalgebraManifest {
    pub operad_ref: String,
    pub coalgebra: CoalgebraOverOperad,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    Collection(Collection),
    Operad(Operad),
    Module(ModuleManifest),
    Hopf(HopfObject),
    Morphism(MorphismManifest),
    Coalgebra(CoalgebraManifest),
}

impl Object {
    pub fn kind(&self) -> &'static str {
        match self {
            Object::Collection(_) => "collection",
            Object::Operad(_) => "operad",
            Object::Module(_) => "module",
            Object::Hopf(_) => "hopf",
            Object::Morphism(_) => "morphism",
            Object::Coalgebra(_) => "coalgebra",
        }
    }

    fn wrong_kind(&self, wanted: &str) -> Error {
        let article = |w: &str| if w.starts_with(['a', 'e', 'i', 'o', 'u']) { "an" } else { "a" };
        Error::Manifest(format!("expected {} {wanted}, found {} {}", article(wanted), article(self.kind()), self.kind()))
    }

    /// Operads and modules also serve as their underlying collections.
    pub fn into_collection(self) -> Result<Collection> {
        match self {
            Object::Collection(c) => Ok(c),
            Object::Operad(p) => Ok(p.collection().clone()),
            Object::Module(m) => Ok(m.module.underlying().clone()),
            other => Err(other.wrong_kind("collection")),
        }
    }

    pub fn into_operad(self) -> Result<Operad> {
        match self {
            Object::Operad(p) => Ok(p),
            other => Err(other.wrong_kind("operad")),
        }
    }

    pub fn into_module(self) -> Result<LeftModule> {
        match self {
            Object::Module(m) => Ok(m.module),
            other => Err(other.wrong_kind("module")),
        }
    }

    pub fn into_hopf(self) -> Result<HopfObject> {
        match self {
            Object::Hopf(h) => Ok(h),
            other => Err(other.wrong_kind("hopf object")),
        }
    }

    pub fn into_morphism(self) -> Result<OperadMorphism> {
        match self {
            Object::Morphism(m) => Ok(m.morphism),
            other => Err(other.wrong_kind("morphism")),
        }
    }

    pub fn into_coalgebra(self) -> Result<CoalgebraOverOperad> {
        match self {
            Object::Coalgebra(c) => Ok(c.coalgebra),
            other => Err(other.wrong_kind("coalgebra")),
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

#[derive(Clone, Copy)]
struct Line<'a> {
    no: usize,
    text: &'a str,
}

impl<'a> Line<'a> {
    /// Whitespace-separated tokens with 1-based columns.
    fn tokens(&self) -> Vec<(usize, &'a str)> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices() {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push((col_of(self.text, s), &self.text[s..i]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            out.push((col_of(self.text, s), &self.text[s..]));
        }
        out
    }

    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        parse_err(self.no, column, message)
    }
}

fn col_of(text: &str, byte: usize) -> usize {
    text[..byte].chars().count() + 1
}

struct Field<'a> {
    line: Line<'a>,
    key: &'a str,
    value: &'a str,
    value_col: usize,
}

struct Section<'a> {
    line: Line<'a>,
    name: &'a str,
    arg: &'a str,
    arg_col: usize,
    body: Vec<Line<'a>>,
}

struct Syntax<'a> {
    fields: Vec<Field<'a>>,
    sections: Vec<Section<'a>>,
}

fn split_field(line: Line<'_>) -> Result<Field<'_>> {
    let Some(pos) = line.text.find(": ").or_else(|| line.text.strip_suffix(':').map(|s| s.len())) else {
        return Err(line.err(1, "expected `key: value`"));
    };
    let key = &line.text[..pos];
    let rest = line.text.get(pos + 1..).unwrap_or("");
    let value = rest.trim_start();
    let value_col = col_of(line.text, line.text.len() - value.len());
    Ok(Field { line, key, value: value.trim_end(), value_col })
}

fn syntax(text: &str) -> Result<Syntax<'_>> {
    let mut fields = Vec::new();
    let mut sections: Vec<Section<'_>> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = Line { no: i + 1, text: raw };
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        if raw.starts_with('[') {
            let Some(inner) = raw.trim_end().strip_prefix('[').and_then(|s| s.strip_suffix(']')) else {
                return Err(line.err(raw.len().max(1), "section header must end with `]`"));
            };
            let (name, arg) = inner.split_once(' ').unwrap_or((inner, ""));
            sections.push(Section { line, name, arg, arg_col: name.len() + 3, body: Vec::new() });
        } else if let Some(s) = sections.last_mut() {
            s.body.push(line);
        } else {
            fields.push(split_field(line)?);
        }
    }
    match fields.first() {
        Some(f) if f.key == "format-version" => {
            if f.value != "1" {
                return Err(f.line.err(f.value_col, format!("unsupported format version `{}`", f.value)));
            }
        }
        Some(f) => return Err(f.line.err(1, "the first field must be `format-version`")),
        None => return Err(parse_err(1, 1, "empty manifest")),
    }
    Ok(Syntax { fields, sections })
}

fn parse_usize(line: &Line<'_>, col: usize, tok: &str, what: &str) -> Result<usize> {
    tok.parse().map_err(|_| line.err(col, format!("expected {what}, found `{tok}`")))
}

fn parse_q(line: &Line<'_>, col: usize, tok: &str) -> Result<Q> {
    if tok.ends_with("/0") || tok.contains("/-") || tok.contains("/+") {
        return Err(line.err(col, format!("invalid rational `{tok}`")));
    }
    Q::from_str(tok).map_err(|_| line.err(col, format!("invalid rational `{tok}`")))
}

/// Reads matrices and `key: value` lines from a section body.
struct Body<'a, 'b> {
    section: &'b Section<'a>,
    pos: usize,
}

impl<'a, 'b> Body<'a, 'b> {
    fn new(section: &'b Section<'a>) -> Self {
        Body { section, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<Line<'a>> {
        let line = self.section.body.get(self.pos).copied().ok_or_else(|| {
            let last = self.section.body.last().map_or(self.section.line, |l| *l);
            parse_err(last.no + 1, 1, format!("section [{}] ends before {what}", self.section.name))
        })?;
        self.pos += 1;
        Ok(line)
    }

    fn field(&mut self, key: &str) -> Result<(Line<'a>, &'a str, usize)> {
        let line = self.next(&format!("`{key}:`"))?;
        let f = split_field(line)?;
        if f.key != key {
            return Err(line.err(1, format!("expected `{key}:`, found `{}`", f.key)));
        }
        Ok((line, f.value, f.value_col))
    }

    fn dims_at(line: &Line<'_>, text: &str, offset: usize) -> Result<(usize, usize)> {
        let toks: Vec<(usize, &str)> = Line { no: line.no, text }.tokens();
        match toks.as_slice() {
            [(c1, r), (_, "x"), (c2, c)] => {
                Ok((parse_usize(line, c1 + offset, r, "a row count")?, parse_usize(line, c2 + offset, c, "a column count")?))
            }
            _ => Err(line.err(offset + 1, "expected `ROWS x COLS`")),
        }
    }

    fn matrix(&mut self) -> Result<Matrix> {
        let line = self.next("a matrix")?;
        let (r, c) = Self::dims_at(&line, line.text, 0)?;
        self.rows(r, c)
    }

    /// Matrix whose size is given after a `name:` prefix on the same line.
    fn named_matrix(&mut self, name: &str) -> Result<Matrix> {
        let line = self.next(&format!("`{name}:`"))?;
        let Some(rest) = line.text.strip_prefix(name).and_then(|s| s.strip_prefix(':')) else {
            return Err(line.err(1, format!("expected `{name}: ROWS x COLS`")));
        };
        let (r, c) = Self::dims_at(&line, rest, name.len() + 1)?;
        self.rows(r, c)
    }

    fn rows(&mut self, r: usize, c: usize) -> Result<Matrix> {
        if c == 0 {
            return Ok(Matrix::zeros(r, 0));
        }
        let mut rows = Vec::with_capacity(r);
        for _ in 0..r {
            let line = self.next("all matrix rows")?;
            rows.push(parse_row(&line, c)?);
        }
        let mut cols: Vec<Vec<(usize, Q)>> = vec![Vec::new(); c];
        for (i, row) in rows.into_iter().enumerate() {
            for (j, x) in row.iter() {
                cols[j].push((i, x.clone()));
            }
        }
        Ok(Matrix::from_columns(r, cols.into_iter().map(SparseVec::from_entries).collect()))
    }

    fn finish(&self) -> Result<()> {
        match self.section.body.get(self.pos) {
            Some(line) => Err(line.err(1, format!("unexpected line in section [{}]", self.section.name))),
            None => Ok(()),
        }
    }
}

fn parse_row(line: &Line<'_>, c: usize) -> Result<SparseVec> {
    let toks = line.tokens();
    if toks.first().is_some_and(|(_, t)| *t == "|") {
        let mut entries = Vec::new();
        let mut last = 0;
        for &(col, tok) in &toks[1..] {
            let Some((j, v)) = tok.split_once(':') else {
                return Err(line.err(col, format!("expected `COL:VALUE`, found `{tok}`")));
            };
            let j = parse_usize(line, col, j, "a column index")?;
            if j == 0 || j > c || j <= last {
                return Err(line.err(col, format!("column {j} out of order or outside 1..{c}")));
            }
            last = j;
            let x = parse_q(line, col + tok.find(':').unwrap() + 1, v)?;
            entries.push((j - 1, x));
        }
        return Ok(SparseVec::from_entries(entries));
    }
    if toks.len() != c {
        let col = toks.get(c).map_or(line.text.len() + 1, |t| t.0);
        return Err(line.err(col, format!("expected {c} entries, found {}", toks.len())));
    }
    let mut entries = Vec::new();
    for (j, &(col, tok)) in toks.iter().enumerate() {
        entries.push((j, parse_q(line, col, tok)?));
    }
    Ok(SparseVec::from_entries(entries))
}

fn parse_shape(section: &Section<'_>) -> Result<Vec<usize>> {
    let line = &section.line;
    let bad = || line.err(section.arg_col, format!("expected a shape `k;n_1,..,n_k`, found `{}`", section.arg));
    let (k, rest) = section.arg.split_once(';').ok_or_else(bad)?;
    let k: usize = k.parse().map_err(|_| bad())?;
    let inner: Vec<usize> = if rest.is_empty() {
        Vec::new()
    } else {
        rest.split(',').map(|s| s.parse().map_err(|_| bad())).collect::<Result<_>>()?
    };
    if inner.len() != k {
        return Err(bad());
    }
    let mut shape = vec![k];
    shape.extend(inner);
    Ok(shape)
}

fn section_index(section: &Section<'_>) -> Result<usize> {
    parse_usize(&section.line, section.arg_col, section.arg, "an arity")
}

struct Header<'a> {
    fields: BTreeMap<&'a str, (Line<'a>, &'a str, usize)>,
}

impl<'a> Header<'a> {
    fn new(fields: &[Field<'a>], allowed: &[&str]) -> Result<Self> {
        let mut map = BTreeMap::new();
        for f in fields {
            if f.key == "format-version" || f.key == "kind" {
                continue;
            }
            if !allowed.contains(&f.key) {
                return Err(f.line.err(1, format!("unknown field `{}`", f.key)));
            }
            if map.insert(f.key, (f.line, f.value, f.value_col)).is_some() {
                return Err(f.line.err(1, format!("duplicate field `{}`", f.key)));
            }
        }
        Ok(Header { fields: map })
    }

    fn get(&self, key: &str) -> Result<(Line<'a>, &'a str, usize)> {
        self.fields.get(key).copied().ok_or_else(|| parse_err(2, 1, format!("missing field `{key}`")))
    }

    fn usize(&self, key: &str) -> Result<usize> {
        let (line, v, col) = self.get(key)?;
        parse_usize(&line, col, v, key)
    }
}

fn parse_support(header: &Header<'_>) -> Result<Support> {
    let (line, v, col) = header.get("support")?;
    match v {
        "truncated" => Ok(Support::Truncated),
        "finite" => Ok(Support::Finite),
        _ => Err(line.err(col, format!("support must be `truncated` or `finite`, found `{v}`"))),
    }
}

fn check_sections(sections: &[Section<'_>], allowed: &[&str]) -> Result<()> {
    for s in sections {
        if !allowed.contains(&s.name) {
            return Err(s.line.err(2, format!("unknown section [{}]", s.name)));
        }
    }
    Ok(())
}

fn parse_rep(section: &Section<'_>, n: usize) -> Result<SymRep> {
    let mut body = Body::new(section);
    let (line, v, col) = body.field("dim")?;
    let dim = parse_usize(&line, col, v, "a dimension")?;
    let mut gens = Vec::new();
    for i in 1..n {
        let m = body.named_matrix(&format!("s{i}"))?;
        if m.nrows() != dim || m.ncols() != dim {
            return Err(section.line.err(1, format!("arity {n}: s{i} must be {dim} x {dim}")));
        }
        gens.push(m);
    }
    body.finish()?;
    SymRep::new(n, dim, gens).map_err(|e| section.line.err(1, format!("arity {n}: {e}")))
}

fn parse_collection(header: &Header<'_>, sections: &[Section<'_>]) -> Result<Collection> {
    let n = header.usize("max-arity")?;
    let support = parse_support(header)?;
    let mut reps: Vec<Option<SymRep>> = vec![None; n + 1];
    for s in sections.iter().filter(|s| s.name == "arity") {
        let k = section_index(s)?;
        if k > n {
            return Err(s.line.err(s.arg_col, format!("arity {k} exceeds max-arity {n}")));
        }
        if reps[k].is_some() {
            return Err(s.line.err(1, format!("duplicate section [arity {k}]")));
        }
        reps[k] = Some(parse_rep(s, k)?);
    }
    let reps = reps
        .into_iter()
        .enumerate()
        .map(|(k, r)| r.ok_or_else(|| parse_err(1, 1, format!("missing section [arity {k}]"))))
        .collect::<Result<Vec<_>>>()?;
    Collection::new(reps, support)
}

fn parse_shape_maps(sections: &[Section<'_>], name: &str) -> Result<BTreeMap<Vec<usize>, Matrix>> {
    let mut maps = BTreeMap::new();
    for s in sections.iter().filter(|s| s.name == name) {
        let shape = parse_shape(s)?;
        let mut body = Body::new(s);
        let m = body.matrix()?;
        body.finish()?;
        if maps.insert(shape, m).is_some() {
            return Err(s.line.err(1, format!("duplicate section [{name} {}]", s.arg)));
        }
    }
    Ok(maps)
}

fn single<'a, 'b>(sections: &'b [Section<'a>], name: &str) -> Result<Option<&'b Section<'a>>> {
    let mut found = sections.iter().filter(|s| s.name == name);
    let first = found.next();
    if let Some(dup) = found.next() {
        return Err(dup.line.err(1, format!("duplicate section [{name}]")));
    }
    Ok(first)
}

fn section_matrix(sections: &[Section<'_>], name: &str) -> Result<Option<Matrix>> {
    let Some(s) = single(sections, name)? else { return Ok(None) };
    let mut body = Body::new(s);
    let m = body.matrix()?;
    body.finish()?;
    Ok(Some(m))
}

fn required_matrix(sections: &[Section<'_>], name: &str) -> Result<Matrix> {
    section_matrix(sections, name)?.ok_or_else(|| parse_err(1, 1, format!("missing section [{name}]")))
}

fn row_vector(m: Matrix, name: &str) -> Result<SparseVec> {
    if m.nrows() != 1 {
        return Err(Error::Manifest(format!("[{name}] must be a single row")));
    }
    Ok(m.row_major().into_iter().next().unwrap_or_default())
}

fn indexed_matrices(sections: &[Section<'_>], name: &str, n: usize) -> Result<Vec<Matrix>> {
    let mut out: Vec<Option<Matrix>> = vec![None; n + 1];
    for s in sections.iter().filter(|s| s.name == name) {
        let k = section_index(s)?;
        if k > n || out[k].is_some() {
            return Err(s.line.err(s.arg_col, format!("unexpected or duplicate section [{name} {k}]")));
        }
        let mut body = Body::new(s);
        out[k] = Some(body.matrix()?);
        body.finish()?;
    }
    out.into_iter()
        .enumerate()
        .map(|(k, m)| m.ok_or_else(|| parse_err(1, 1, format!("missing section [{name} {k}]"))))
        .collect()
}

fn resolve_field(header: &Header<'_>, key: &str, base: Option<&Path>) -> Result<(String, Object)> {
    let (line, v, col) = header.get(key)?;
    let obj = resolve(v, base).map_err(|e| line.err(col, format!("cannot resolve `{v}`: {e}")))?;
    Ok((v.to_string(), obj))
}

/// Parses a manifest; references are resolved relative to `base`.
pub fn parse(text: &str, base: Option<&Path>) -> Result<Object> {
    let syn = syntax(text)?;
    let Some(kind) = syn.fields.get(1).filter(|f| f.key == "kind") else {
        return Err(parse_err(2, 1, "the second field must be `kind`"));
    };
    let secs = &syn.sections;
    match kind.value {
        "collection" => {
            let header = Header::new(&syn.fields, &["max-arity", "support"])?;
            check_sections(secs, &["arity"])?;
            Ok(Object::Collection(parse_collection(&header, secs)?))
        }
        "operad" => {
            let header = Header::new(&syn.fields, &["max-arity", "support"])?;
            check_sections(secs, &["arity", "unit", "gamma"])?;
            let coll = parse_collection(&header, secs)?;
            let unit = row_vector(required_matrix(secs, "unit")?, "unit")?;
            let gamma = parse_shape_maps(secs, "gamma")?;
            Ok(Object::Operad(Operad::from_parts(coll, unit, gamma)?))
        }
        "module" => {
            let header = Header::new(&syn.fields, &["max-arity", "operad", "support"])?;
            check_sections(secs, &["arity", "action"])?;
            let (operad_ref, p) = resolve_field(&header, "operad", base)?;
            let underlying = parse_collection(&header, secs)?;
            let action = parse_shape_maps(secs, "action")?;
            let module = LeftModule::new(p.into_operad()?, underlying, action)?;
            Ok(Object::Module(ModuleManifest { operad_ref, module }))
        }
        "hopf" => {
            let header = Header::new(&syn.fields, &["labels"])?;
            check_sections(secs, &["mult", "unit", "comult", "counit", "antipode"])?;
            let labels: Vec<String> = header.get("labels")?.1.split_whitespace().map(str::to_string).collect();
            let h = HopfObject::new(
                labels,
                required_matrix(secs, "mult")?,
                row_vector(required_matrix(secs, "unit")?, "unit")?,
                required_matrix(secs, "comult")?,
                row_vector(required_matrix(secs, "counit")?, "counit")?,
                section_matrix(secs, "antipode")?,
            )?;
            Ok(Object::Hopf(h))
        }
        "morphism" => {
            let header = Header::new(&syn.fields, &["max-arity", "source", "target"])?;
            check_sections(secs, &["component"])?;
            let (source_ref, src) = resolve_field(&header, "source", base)?;
            let (target_ref, tgt) = resolve_field(&header, "target", base)?;
            let n = header.usize("max-arity")?;
            let components = indexed_matrices(secs, "component", n)?;
            let morphism = OperadMorphism::new(src.into_operad()?, tgt.into_operad()?, components)?;
            Ok(Object::Morphism(MorphismManifest { source_ref, target_ref, morphism }))
        }
        "coalgebra" => {
            let header = Header::new(&syn.fields, &["max-arity", "operad", "dim"])?;
            check_sections(secs, &["structure"])?;
            let (operad_ref, q) = resolve_field(&header, "operad", base)?;
            let n = header.usize("max-arity")?;
            let dim = header.usize("dim")?;
            let structure = indexed_matrices(secs, "structure", n)?;
            let coalgebra = CoalgebraOverOperad::new(q.into_operad()?, dim, structure)?;
            Ok(Object::Coalgebra(CoalgebraManifest { operad_ref, coalgebra }))
        }
        other => Err(kind.line.err(kind.value_col, format!("unknown kind `{other}`"))),
    }
}

fn write_row(out: &mut String, row: &SparseVec, cols: usize) {
    if cols <= DENSE_WIDTH {
        let vals: Vec<String> = row.to_dense(cols).iter().map(|x| x.to_string()).collect();
        out.push_str(&vals.join(" "));
    } else {
        out.push('|');
        for (j, x) in row.iter() {
            let _ = write!(out, " {}:{}", j + 1, x);
        }
    }
    out.push('\n');
}

fn write_matrix(out: &mut String, prefix: &str, m: &Matrix) {
    let _ = writeln!(out, "{prefix}{} x {}", m.nrows(), m.ncols());
    if m.ncols() == 0 {
        return;
    }
    for row in m.row_major() {
        write_row(out, &row, m.ncols());
    }
}

fn write_vector(out: &mut String, v: &SparseVec, len: usize) {
    let m = Matrix::from_columns(1, (0..len).map(|j| SparseVec::single(0, v.get(j))).collect());
    write_matrix(out, "", &m);
}

fn write_collection_sections(out: &mut String, c: &Collection) {
    for n in 0..=c.max_arity() {
        let rep = c.rep(n);
        let _ = writeln!(out, "\n[arity {n}]\ndim: {}", rep.dim());
        for (i, g) in rep.generators().iter().enumerate() {
            write_matrix(out, &format!("s{}: ", i + 1), g);
        }
    }
}

fn support_name(c: &Collection) -> &'static str {
    match c.support() {
        Support::Truncated => "truncated",
        Support::Finite => "finite",
    }
}

fn write_shape(shape: &[usize]) -> String {
    let inner: Vec<String> = shape[1..].iter().map(|x| x.to_string()).collect();
    format!("{};{}", shape[0], inner.join(","))
}

/// Canonical text of a manifest.
pub fn print(obj: &Object) -> String {
    let mut out = format!("format-version: 1\nkind: {}\n", obj.kind());
    match obj {
        Object::Collection(c) => {
            let _ = writeln!(out, "max-arity: {}\nsupport: {}", c.max_arity(), support_name(c));
            write_collection_sections(&mut out, c);
        }
        Object::Operad(p) => {
            let c = p.collection();
            let _ = writeln!(out, "max-arity: {}\nsupport: {}", c.max_arity(), support_name(c));
            write_collection_sections(&mut out, c);
            out.push_str("\n[unit]\n");
            write_vector(&mut out, p.unit(), p.dim(1));
            for (shape, m) in p.gamma().iter() {
                let _ = writeln!(out, "\n[gamma {}]", write_shape(shape));
                write_matrix(&mut out, "", m);
            }
        }
        Object::Module(m) => {
            let c = m.module.underlying();
            let _ = writeln!(out, "max-arity: {}\noperad: {}\nsupport: {}", c.max_arity(), m.operad_ref, support_name(c));
            write_collection_sections(&mut out, c);
            for (shape, a) in m.module.action().iter() {
                let _ = writeln!(out, "\n[action {}]", write_shape(shape));
                write_matrix(&mut out, "", a);
            }
        }
        Object::Hopf(h) => {
            let _ = writeln!(out, "labels: {}", h.labels().join(" "));
            out.push_str("\n[mult]\n");
            write_matrix(&mut out, "", h.mult());
            out.push_str("\n[unit]\n");
            write_vector(&mut out, h.unit(), h.dim());
            out.push_str("\n[comult]\n");
            write_matrix(&mut out, "", h.comult());
            out.push_str("\n[counit]\n");
            write_vector(&mut out, h.counit(), h.dim());
            if let Some(s) = h.antipode() {
                out.push_str("\n[antipode]\n");
                write_matrix(&mut out, "", s);
            }
        }
        Object::Morphism(m) => {
            let _ = writeln!(
                out,
                "max-arity: {}\nsource: {}\ntarget: {}",
                m.morphism.max_arity(),
                m.source_ref,
                m.target_ref
            );
            for (k, c) in m.morphism.components().iter().enumerate() {
                let _ = writeln!(out, "\n[component {k}]");
                write_matrix(&mut out, "", c);
            }
        }
        Object::Coalgebra(c) => {
            let b = &c.coalgebra;
            let n = b.operad().max_arity();
            let _ = writeln!(out, "max-arity: {n}\noperad: {}\ndim: {}", c.operad_ref, b.dim());
            for k in 0..=n {
                let _ = writeln!(out, "\n[structure {k}]");
                write_matrix(&mut out, "", b.structure(k));
            }
        }
    }
    out
}

/// Reads and parses a manifest file.
pub fn load(path: &Path) -> Result<Object> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Manifest(format!("cannot read {}: {e}", path.display())))?;
    parse(&text, path.parent())
}

/// Resolves a reference: a path, `builtin:...` or `hadamard(A,B)`.
pub fn resolve(reference: &str, base: Option<&Path>) -> Result<Object> {
    if let Some(spec) = reference.strip_prefix("builtin:") {
        return builtin(spec);
    }
    if let Some(inner) = reference.strip_prefix("hadamard(").and_then(|s| s.strip_suffix(')')) {
        let mut depth = 0usize;
        let split = inner.char_indices().find(|&(_, ch)| {
            match ch {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                _ => {}
            }
            ch == ',' && depth == 0
        });
        let Some((pos, _)) = split else {
            return Err(Error::Manifest(format!("`{reference}` needs two arguments")));
        };
        let p = resolve(inner[..pos].trim(), base)?.into_operad()?;
        let q = resolve(inner[pos + 1..].trim(), base)?.into_operad()?;
        return Ok(Object::Operad(hadamard_operad(&p, &q)?));
    }
    let path = match base {
        Some(b) => b.join(reference),
        None => Path::new(reference).to_path_buf(),
    };
    load(&path)
}

fn builtin_operad(name: &str, n: usize) -> Result<Option<Operad>> {
    Ok(Some(match name {
        "ass" => operads::ass_operad(n)?,
        "ass+" => operads::ass_positive(n)?,
        "com" => operads::com_operad(n)?,
        "com+" => operads::com_positive(n)?,
        "initial+" => operads::initial_positive(n)?,
        "initial-reduced" => operads::initial_reduced(n)?,
        _ => return Ok(None),
    }))
}

/// Names understood after `builtin:`.
pub const BUILTINS: &[&str] = &[
    "ass:N",
    "ass+:N",
    "com:N",
    "com+:N",
    "initial+:N",
    "initial-reduced:N",
    "unit:N",
    "zero:N",
    "species-e:N",
    "species-e+:N",
    "species-l:N",
    "species-l+:N",
    "group:M1xM2x..",
    "z2-mult",
    "fold:N",
    "id:OPERAD:N",
    "ass-split-iota:N",
    "ass-split-rho:N",
    "com-split-iota:N",
    "com-split-rho:N",
    "self:OPERAD:N",
    "free:OPERAD:N",
    "grouplike-ass:DIM:N",
    "grouplike-com:DIM:N",
];

fn builtin(spec: &str) -> Result<Object> {
    let parts: Vec<&str> = spec.split(':').collect();
    let bad = || Error::Manifest(format!("unknown builtin `{spec}`; known: {}", BUILTINS.join(", ")));
    let num = |s: &str| -> Result<usize> { s.parse().map_err(|_| bad()) };
    let op_ref = |name: &str, n: usize| format!("builtin:{name}:{n}");
    let morphism = |source_ref: String, target_ref: String, morphism: OperadMorphism| {
        Object::Morphism(MorphismManifest { source_ref, target_ref, morphism })
    };
    match parts.as_slice() {
        ["group", orders] => {
            let orders = orders.split('x').map(num).collect::<Result<Vec<_>>>()?;
            Ok(Object::Hopf(group_hopf(&orders)?))
        }
        [name, n] => {
            let n = num(n)?;
            if let Some(p) = builtin_operad(name, n)? {
                return Ok(Object::Operad(p));
            }
            let species = |s: SetSpeciesCollection| -> Result<Object> { Ok(Object::Collection(perm_rep_of(&s)?)) };
            match *name {
                "unit" => Ok(Object::Collection(unit_collection(n))),
                "zero" => Ok(Object::Collection(Collection::zero(n).with_support(Support::Finite))),
                "species-e" => species(SetSpeciesCollection::e(n)),
                "species-e+" => species(SetSpeciesCollection::e_plus(n)),
                "species-l" => species(SetSpeciesCollection::l(n)),
                "species-l+" => species(SetSpeciesCollection::l_plus(n)),
                "fold" => Ok(morphism(op_ref("ass", n), op_ref("com", n), operads::fold_morphism(n)?)),
                "ass-split-iota" | "com-split-iota" | "ass-split-rho" | "com-split-rho" => {
                    let base = &name[..3];
                    let p = op_ref(base, n);
                    let pa = format!("hadamard({p},{})", op_ref("ass", n));
                    Ok(match *name {
                        "ass-split-iota" => morphism(p, pa, operads::ass_split_iota(n)?),
                        "com-split-iota" => morphism(p, pa, operads::com_split_iota(n)?),
                        "ass-split-rho" => morphism(pa, p, operads::ass_split_rho(n)?),
                        _ => morphism(pa, p, operads::com_split_rho(n)?),
                    })
                }
                _ => Err(bad()),
            }
        }
        ["z2-mult"] => Ok(Object::Hopf(multiplicative_z2())),
        [kind @ ("id" | "self" | "free"), op, n] => {
            let n = num(n)?;
            let p = builtin_operad(op, n)?.ok_or_else(bad)?;
            let r = op_ref(op, n);
            Ok(match *kind {
                "id" => morphism(r.clone(), r, OperadMorphism::identity(&p)),
                "self" => Object::Module(ModuleManifest { operad_ref: r, module: LeftModule::operad_as_module(&p) }),
                _ => Object::Module(ModuleManifest { operad_ref: r, module: free_left_module(&p, &unit_collection(n), n)? }),
            })
        }
        [kind @ ("grouplike-ass" | "grouplike-com"), dim, n] => {
            let (dim, n) = (num(dim)?, num(n)?);
            let (op, weight) = if *kind == "grouplike-ass" {
                ("ass", operads::fold_morphism(n)?)
            } else {
                ("com", OperadMorphism::identity(&operads::com_operad(n)?))
            };
            let coalgebra = CoalgebraOverOperad::grouplike(&weight, dim)?;
            Ok(Object::Coalgebra(CoalgebraManifest { operad_ref: op_ref(op, n), coalgebra }))
        }
        _ => Err(bad()),
    }
}

/// Character table lines `arity n: (partition)=value ...`.
pub fn character_table(c: &Collection) -> Vec<String> {
    (0..=c.max_arity())
        .map(|n| {
            let cells: Vec<String> = c
                .rep(n)
                .characters_on_classes()
                .into_iter()
                .map(|(cls, x)| {
                    let parts: Vec<String> = cls.iter().map(|p| p.to_string()).collect();
                    format!("({})={}", parts.join(","), x)
                })
                .collect();
            format!("arity {n}: {}", cells.join(" "))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(obj: &Object) {
        let text = print(obj);
        let back = parse(&text, None).unwrap();
        assert_eq!(&back, obj);
        assert_eq!(print(&back), text);
    }

    #[test]
    fn builtins_round_trip() {
        for r in [
            "builtin:ass:3",
            "builtin:com+:3",
            "builtin:unit:3",
            "builtin:species-l+:3",
            "builtin:group:2x2",
            "builtin:z2-mult",
            "builtin:fold:3",
            "builtin:free:com+:3",
            "builtin:grouplike-ass:2:3",
            "builtin:ass-split-iota:2",
        ] {
            round_trip(&resolve(r, None).unwrap());
        }
    }

    #[test]
    fn ass3_loads_with_factorial_dims() {
        let text = print(&resolve("builtin:ass:3", None).unwrap());
        let p = parse(&text, None).unwrap().into_operad().unwrap();
        assert_eq!((0..=3).map(|n| p.dim(n)).collect::<Vec<_>>(), vec![1, 1, 2, 6]);
    }

    #[test]
    fn braid_failure_is_named() {
        let text = "format-version: 1\nkind: collection\nmax-arity: 3\nsupport: truncated\n\n[arity 0]\ndim: 0\n\n[arity 1]\ndim: 0\n\n[arity 2]\ndim: 0\ns1: 0 x 0\n\n[arity 3]\ndim: 2\ns1: 2 x 2\n0 1\n1 0\ns2: 2 x 2\n1 0\n0 -1\n";
        let err = parse(text, None).unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("s_1s_2s_1 != s_2s_1s_2"), "{msg}");
        assert!(msg.starts_with("16:1:"), "{msg}");
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = parse("format-version: 1\nkind: collection\nmax-arity: 1\nsupport: truncated\ncolour: red\n", None).unwrap_err();
        assert_eq!(err, Error::Parse { line: 5, column: 1, message: "unknown field `colour`".into() });
        let text = "format-version: 1\nkind: collection\nmax-arity: 1\nsupport: truncated\n[arity 0]\ndim: 1\n[arity 1]\ndim: 2\n";
        assert!(parse(text, None).is_ok());
        let text = "format-version: 1\nkind: hopf\nlabels: a\n[mult]\n1 x 1\n1/0\n";
        match parse(text, None).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (6, 1)),
            e => panic!("{e}"),
        }
        let text = "format-version: 1\nkind: hopf\nlabels: a\n[mult]\n1 x 2\n1\n";
        match parse(text, None).unwrap_err() {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (6, 2)),
            e => panic!("{e}"),
        }
        assert!(matches!(parse("kind: operad\n", None), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn sparse_rows_parse() {
        let text = "format-version: 1\nkind: morphism\nmax-arity: 1\nsource: builtin:com:1\ntarget: builtin:com:1\n[component 0]\n1 x 1\n| 1:1\n[component 1]\n1 x 1\n1\n";
        let m = parse(text, None).unwrap().into_morphism().unwrap();
        assert!(m.component(0).is_identity());
    }
}
