/** JSON payloads exchanged with the adjudication service. */

export type Choice = "take_a" | "take_b" | "custom";

export type Pair = [string, string | null];

export interface TokenJson {
  id: number;
  form: string;
  lemma: string | null;
  upos: string | null;
  xpos: string | null;
  feats: Pair[];
  head: number | null;
  deprel: string;
  deps: string;
  misc: Pair[];
  lang: string | null;
}

export interface RecordJson {
  sent_id: string;
  token_id: number;
  fields: string[];
  a: Record<string, string | number | null>;
  b: Record<string, string | number | null>;
}

export interface CustomValuesJson {
  upos: string | null;
  head: number;
  deprel: string;
}

export interface ResolutionJson {
  sent_id: string;
  token_id: number;
  choice: Choice;
  custom_values: CustomValuesJson | null;
  note: string | null;
  timestamp: string;
}

export interface SessionInfo {
  annotators: string[];
  sentence_count: number;
  record_count: number;
  resolved_count: number;
}

export interface SentenceSummary {
  index: number;
  sent_id: string;
  text: string;
  record_count: number;
  resolved_count: number;
}

export interface SentenceDetail extends SentenceSummary {
  tokens_a: TokenJson[];
  tokens_b: TokenJson[];
  records: RecordJson[];
  resolutions: ResolutionJson[];
}

export interface ScoreJson {
  pos: number;
  uas: number;
  las: number;
  total_tokens: number;
  pos_matches: number;
  head_matches: number;
  labeled_matches: number;
}

export interface ProgressInfo {
  resolved: number;
  total: number;
  provisional: ScoreJson;
}

export interface ResolutionRequest {
  token_id: number;
  choice: Choice;
  custom_values?: CustomValuesJson;
  note?: string;
}

export interface ApiErrorBody {
  code: string;
  message: string;
  http_status: number;
}
