import posTagger from 'wink-pos-tagger'

import { ptbToUpos } from './ptb'
import {
  ConversationRecord,
  RawUtterance,
  TaggedToken,
  parseRawRecord,
  taggedRecordToLine,
  validateTaggedRecord,
} from './schema'

// The lexicon-based model is fully deterministic, so golden files are pinned
// to this exact package version.
export const MODEL_ID = 'wink-pos-tagger@2.2.2'

export interface TagSummary {
  records: number
  utterances: number
  droppedEmptyUtterances: number
  tokens: number
  uposCounts: Record<string, number>
  model: string
}

const tagger = posTagger()

function utteranceText(utt: RawUtterance): string {
  if (utt.text !== undefined) return utt.text
  return (utt.tokens ?? []).map((t) => t.s).join(' ')
}

export function tagText(text: string): TaggedToken[] {
  return tagger
    .tagSentence(text)
    .filter((t) => t.value.trim().length > 0)
    .map((t) => ({ s: t.value, p: ptbToUpos(t.pos, t.tag) }))
}

export function tagRecord(
  record: ConversationRecord,
  summary: TagSummary,
): ConversationRecord {
  const utterances = []
  for (const utt of record.utterances) {
    const tokens = tagText(utteranceText(utt))
    if (tokens.length === 0) {
      summary.droppedEmptyUtterances += 1
      continue
    }
    summary.utterances += 1
    summary.tokens += tokens.length
    for (const token of tokens) {
      summary.uposCounts[token.p] = (summary.uposCounts[token.p] ?? 0) + 1
    }
    utterances.push({
      speaker: utt.speaker,
      start_s: utt.start_s,
      stop_s: utt.stop_s,
      tokens,
    })
  }
  summary.records += 1
  return {
    id: record.id,
    kind: record.kind,
    meta: { ...record.meta, tagger: MODEL_ID },
    utterances,
  }
}

export function newSummary(): TagSummary {
  return {
    records: 0,
    utterances: 0,
    droppedEmptyUtterances: 0,
    tokens: 0,
    uposCounts: {},
    model: MODEL_ID,
  }
}

/** Tag every record of a raw JSONL payload; order is preserved. */
export function tagCorpus(rawLines: string[]): { lines: string[]; summary: TagSummary } {
  const summary = newSummary()
  const lines: string[] = []
  rawLines.forEach((line, i) => {
    if (line.trim().length === 0) return
    const record = parseRawRecord(line, i + 1)
    const tagged = tagRecord(record, summary)
    validateTaggedRecord(tagged, i + 1)
    lines.push(taggedRecordToLine(tagged))
  })
  return { lines, summary }
}
