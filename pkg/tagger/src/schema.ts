// Interchange record shapes shared with the Python toolkit: raw records carry
// utterance text, tagged records carry [{s, p}] tokens with UPOS tags.

export const UPOS_TAGS = new Set([
  'ADJ', 'ADP', 'ADV', 'AUX', 'CCONJ', 'DET', 'INTJ', 'NOUN', 'NUM',
  'PART', 'PRON', 'PROPN', 'PUNCT', 'SCONJ', 'SYM', 'VERB', 'X',
])

export const CORPUS_KINDS = new Set([
  'candor', 'movies_individual', 'movies_grouped', 'generic',
])

export interface TaggedToken {
  s: string
  p: string
}

export interface RawUtterance {
  speaker: string
  start_s: number | null
  stop_s: number | null
  text?: string
  tokens?: TaggedToken[]
}

export interface ConversationRecord {
  id: string
  kind: string
  meta: Record<string, string | string[]>
  utterances: RawUtterance[]
}

export class SchemaError extends Error {
  constructor(recordIndex: number, message: string) {
    super(`record ${recordIndex}: ${message}`)
  }
}

function isPlainObject(value: unknown): value is Record<string, unknown> {
  return typeof value === 'object' && value !== null && !Array.isArray(value)
}

export function parseRawRecord(line: string, index: number): ConversationRecord {
  let parsed: unknown
  try {
    parsed = JSON.parse(line)
  } catch (err) {
    throw new SchemaError(index, `invalid JSON (${(err as Error).message})`)
  }
  if (!isPlainObject(parsed)) throw new SchemaError(index, 'record must be an object')
  const record = parsed as Record<string, unknown>
  if (typeof record.id !== 'string') throw new SchemaError(index, "missing string 'id'")
  if (typeof record.kind !== 'string' || !CORPUS_KINDS.has(record.kind)) {
    throw new SchemaError(index, `unknown corpus kind ${JSON.stringify(record.kind)}`)
  }
  if (!Array.isArray(record.utterances)) {
    throw new SchemaError(index, "missing 'utterances' list")
  }
  const utterances: RawUtterance[] = record.utterances.map((u, i) => {
    if (!isPlainObject(u)) throw new SchemaError(index, `utterance ${i} must be an object`)
    const hasText = typeof u.text === 'string'
    const hasTokens = Array.isArray(u.tokens)
    if (!hasText && !hasTokens) {
      throw new SchemaError(index, `utterance ${i} needs 'text' or 'tokens'`)
    }
    for (const key of ['start_s', 'stop_s']) {
      const v = (u as Record<string, unknown>)[key]
      if (v !== undefined && v !== null && typeof v !== 'number') {
        throw new SchemaError(index, `utterance ${i}: '${key}' must be number or null`)
      }
    }
    return {
      speaker: typeof u.speaker === 'string' ? u.speaker : '',
      start_s: (u.start_s as number | null | undefined) ?? null,
      stop_s: (u.stop_s as number | null | undefined) ?? null,
      text: hasText ? (u.text as string) : undefined,
      tokens: hasTokens ? (u.tokens as TaggedToken[]) : undefined,
    }
  })
  const meta = isPlainObject(record.meta)
    ? (record.meta as Record<string, string | string[]>)
    : {}
  return { id: record.id, kind: record.kind, meta, utterances }
}

/** Throws unless the record matches the canonical tagged schema exactly. */
export function validateTaggedRecord(record: ConversationRecord, index: number): void {
  for (const [i, utt] of record.utterances.entries()) {
    if (!Array.isArray(utt.tokens) || utt.tokens.length === 0) {
      throw new SchemaError(index, `utterance ${i} has no tokens`)
    }
    for (const token of utt.tokens) {
      if (typeof token.s !== 'string' || token.s.length === 0) {
        throw new SchemaError(index, `utterance ${i} has an empty surface`)
      }
      if (!UPOS_TAGS.has(token.p)) {
        throw new SchemaError(index, `utterance ${i} carries non-UPOS tag '${token.p}'`)
      }
    }
  }
}

/** Serialize with the same field order the Python writer uses. */
export function taggedRecordToLine(record: ConversationRecord): string {
  const meta: Record<string, string | string[]> = {}
  for (const key of Object.keys(record.meta).sort()) meta[key] = record.meta[key]
  return JSON.stringify({
    id: record.id,
    kind: record.kind,
    meta,
    utterances: record.utterances.map((u) => ({
      speaker: u.speaker,
      start_s: u.start_s,
      stop_s: u.stop_s,
      tokens: u.tokens,
    })),
  })
}
