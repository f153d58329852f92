/**
 * DOM controller wiring the search bar, suggestion dropdown, stacked result
 * gallery, generation panel, and saved sidebar to the HTTP API.
 *
 * The server is the event log of record: each user gesture maps to exactly
 * one API call that logs it (search, similar, show more, suggest, generate,
 * save, unsave), plus one client-side log call when a suggestion is accepted
 * into the search bar. Pure view updates (arrow cycling, segment toggles,
 * chip picks) never touch the network.
 */

import { ApiClient, type SegmentItem, type SuggestionItem } from "./api";
import { GalleryStore, type GallerySection, type SectionKind } from "./gallery";
import { GenerationPanel, type GenerationMode } from "./generation";
import { KeywordPicker } from "./keywords";
import { SavePanel } from "./saves";
import type { SegmentSelection } from "./segments";
import { SuggestionNavigator } from "./suggestions";

export class App {
  readonly navigator = new SuggestionNavigator();
  readonly gallery = new GalleryStore();
  readonly panel: GenerationPanel;
  readonly saves: SavePanel;
  readonly picker = new KeywordPicker();

  private readonly doc: Document;
  private searchInput!: HTMLInputElement;
  private suggestionList!: HTMLElement;
  private galleryEl!: HTMLElement;
  private panelEl!: HTMLElement;
  private savedList!: HTMLElement;
  private statusEl!: HTMLElement;
  private panelSegments: SegmentItem[] = [];

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    this.doc = root.ownerDocument;
    this.panel = new GenerationPanel(api);
    this.saves = new SavePanel(api);
    this.buildSkeleton();
  }

  // ---- layout ----

  private buildSkeleton(): void {
    this.root.innerHTML = "";

    const header = this.el("header", "topbar");
    this.searchInput = this.el("input", "search-input") as HTMLInputElement;
    this.searchInput.id = "search-input";
    this.searchInput.type = "text";
    this.searchInput.placeholder = "Describe the image you want";
    this.searchInput.addEventListener("keydown", (e) => this.onSearchKey(e));

    const suggestButton = this.el("button", "suggest-button");
    suggestButton.id = "suggest-button";
    suggestButton.textContent = "Suggest";
    suggestButton.addEventListener("click", () => void this.runSuggest());

    this.suggestionList = this.el("ul", "suggestion-list");
    this.suggestionList.id = "suggestion-list";
    this.suggestionList.hidden = true;

    header.append(this.searchInput, suggestButton, this.suggestionList);

    const main = this.el("main", "layout");
    this.galleryEl = this.el("section", "gallery");
    this.galleryEl.id = "gallery";
    this.panelEl = this.el("aside", "generation-panel");
    this.panelEl.id = "generation-panel";
    this.panelEl.hidden = true;

    const savedPanel = this.el("aside", "saved-panel");
    const savedTitle = this.el("h2");
    savedTitle.textContent = "Saved";
    this.savedList = this.el("ul", "saved-list");
    this.savedList.id = "saved-list";
    savedPanel.append(savedTitle, this.savedList);

    this.statusEl = this.el("div", "status");
    this.statusEl.id = "status";

    main.append(this.galleryEl, this.panelEl, savedPanel);
    this.root.append(header, main, this.statusEl);
  }

  private el(tag: string, className?: string): HTMLElement {
    const node = this.doc.createElement(tag);
    if (className) node.className = className;
    return node as HTMLElement;
  }

  private setStatus(text: string): void {
    this.statusEl.textContent = text;
  }

  // ---- search bar and suggestions ----

  private onSearchKey(event: KeyboardEvent): void {
    const outcome = this.navigator.handleKey(event.key);
    switch (outcome.kind) {
      case "moved":
        event.preventDefault();
        this.renderSuggestions();
        break;
      case "accepted":
        event.preventDefault();
        this.searchInput.value = outcome.query;
        this.navigator.clear();
        this.renderSuggestions();
        void this.api.logEvent("concretize_accepted", { query: outcome.query });
        break;
      case "submitted":
        event.preventDefault();
        this.navigator.clear();
        this.renderSuggestions();
        void this.runTextSearch(this.searchInput.value);
        break;
      case "dismissed":
        this.renderSuggestions();
        break;
      default:
        break;
    }
  }

  async runSuggest(): Promise<void> {
    const q = this.searchInput.value.trim();
    if (!q) {
      this.setStatus("Type a query before asking for suggestions");
      return;
    }
    try {
      const response = await this.api.suggest(q);
      this.navigator.load(response.suggestions);
      this.renderSuggestions();
      this.setStatus(response.explanation);
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  private renderSuggestions(): void {
    this.suggestionList.innerHTML = "";
    this.suggestionList.hidden = !this.navigator.isOpen;
    this.navigator.suggestions.forEach((item: SuggestionItem, i: number) => {
      const row = this.el("li", "suggestion-row");
      if (i === this.navigator.activeIndex) row.classList.add("active");
      const text = this.el("span", "suggestion-query");
      text.textContent = item.query;
      row.append(text);
      const strip = this.el("span", "suggestion-previews");
      for (const preview of item.previews) {
        const img = this.el("img", "preview-thumb") as HTMLImageElement;
        img.src = preview.uri;
        img.alt = preview.description;
        img.dataset.imageId = preview.image_id;
        img.addEventListener("click", (e) => {
          e.stopPropagation();
          void this.runSimilar(preview.image_id);
        });
        strip.append(img);
      }
      row.append(strip);
      row.addEventListener("click", () => {
        const clicked = this.navigator.suggestions[i];
        this.searchInput.value = clicked.query;
        this.navigator.clear();
        this.renderSuggestions();
        void this.api.logEvent("concretize_accepted", { query: clicked.query });
      });
      this.suggestionList.append(row);
    });
  }

  // ---- gallery ----

  async runTextSearch(query: string): Promise<void> {
    try {
      const page = await this.api.search(query);
      this.gallery.appendSection("text", `Search: ${query}`, page);
      this.renderGallery();
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  async runSimilar(imageId: string, kind: SectionKind = "similar"): Promise<void> {
    try {
      const page = await this.api.similar(imageId);
      const label =
        kind === "generated" ? `Results for generated ${imageId}` : `Similar to ${imageId}`;
      this.gallery.appendSection(kind, label, page, imageId);
      this.renderGallery();
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  private async showMore(section: GallerySection): Promise<void> {
    try {
      const page = await this.api.more(section.queryToken);
      this.gallery.extendSection(section.queryToken, page);
      this.renderGallery();
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  renderGallery(): void {
    this.galleryEl.innerHTML = "";
    for (const section of this.gallery.sections) {
      const block = this.el("section", "gallery-section");
      block.dataset.token = section.queryToken;
      const title = this.el("h2", "section-label");
      title.textContent = section.label;
      block.append(title);

      const grid = this.el("div", "result-grid");
      for (const item of section.items) {
        const card = this.el("figure", "result-card");
        card.dataset.imageId = item.image_id;

        const img = this.el("img", "result-image") as HTMLImageElement;
        img.src = item.uri;
        img.alt = item.description;
        card.append(img);

        const caption = this.el("figcaption");
        caption.textContent = item.description;
        card.append(caption);

        const actions = this.el("div", "card-actions");
        const similarBtn = this.el("button", "similar-button");
        similarBtn.textContent = "Similar";
        similarBtn.addEventListener("click", () => void this.runSimilar(item.image_id));

        const saveBtn = this.el("button", "save-button");
        saveBtn.textContent = this.saves.isSaved(item.image_id) ? "Unsave" : "Save";
        saveBtn.addEventListener("click", () => void this.toggleSave(item.image_id));

        const modifyBtn = this.el("button", "modify-button");
        modifyBtn.textContent = "Modify";
        modifyBtn.addEventListener("click", () => void this.openPanel(item.image_id));

        actions.append(similarBtn, saveBtn, modifyBtn);
        card.append(actions);
        grid.append(card);
      }
      block.append(grid);

      if (!section.exhausted) {
        const moreBtn = this.el("button", "more-button");
        moreBtn.textContent = "Show more";
        moreBtn.addEventListener("click", () => void this.showMore(section));
        block.append(moreBtn);
      }
      this.galleryEl.append(block);
    }
  }

  // ---- saves ----

  async toggleSave(imageId: string): Promise<void> {
    try {
      await this.saves.toggle(imageId);
      this.renderSaved();
      this.renderGallery();
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  renderSaved(): void {
    this.savedList.innerHTML = "";
    for (const imageId of this.saves.saved) {
      const row = this.el("li", "saved-row");
      row.dataset.imageId = imageId;
      const img = this.el("img", "saved-thumb") as HTMLImageElement;
      img.src = this.api.imageUrl(imageId);
      img.alt = imageId;
      const removeBtn = this.el("button", "unsave-button");
      removeBtn.textContent = "Remove";
      removeBtn.addEventListener("click", () => void this.toggleSave(imageId));
      row.append(img, removeBtn);
      this.savedList.append(row);
    }
  }

  // ---- generation panel ----

  async openPanel(imageId: string): Promise<void> {
    try {
      const response = await this.api.segments(imageId);
      this.panel.open(imageId);
      this.panelSegments = response.segments;
      this.picker.clear();
      this.renderPanel();
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  private renderPanel(): void {
    this.panelEl.innerHTML = "";
    this.panelEl.hidden = !this.panel.isOpen;
    if (!this.panel.isOpen) return;

    const title = this.el("h2");
    title.textContent = `Modify ${this.panel.sourceImageId}`;
    this.panelEl.append(title);

    this.panelEl.append(this.buildSegmentGrid(this.panel.selection));
    this.panelEl.append(this.buildModeForm());
    this.panelEl.append(this.buildGenerateControls());
    if (this.panel.error) this.panelEl.append(this.buildErrorRow());
    if (this.panel.result) this.panelEl.append(this.buildResultCard());
  }

  private buildSegmentGrid(selection: SegmentSelection): HTMLElement {
    const grid = this.el("div", "segment-grid");
    for (const segment of this.panelSegments) {
      const cell = this.el("button", "segment-cell");
      cell.dataset.segmentId = segment.segment_id;
      cell.textContent = segment.segment_id;
      if (selection.has(segment.segment_id)) cell.classList.add("selected");
      cell.addEventListener("click", () => {
        selection.toggle(segment.segment_id);
        this.renderPanel();
      });
      grid.append(cell);
    }
    return grid;
  }

  private buildModeForm(): HTMLElement {
    const form = this.el("div", "mode-form");
    for (const mode of ["reference", "keywords"] as GenerationMode[]) {
      const label = this.el("label", "mode-option");
      const radio = this.el("input") as HTMLInputElement;
      radio.type = "radio";
      radio.name = "generation-mode";
      radio.value = mode;
      radio.checked = this.panel.mode === mode;
      radio.addEventListener("change", () => {
        this.panel.mode = mode;
        this.renderPanel();
      });
      label.append(radio, this.doc.createTextNode(mode));
      form.append(label);
    }

    if (this.panel.mode === "reference") {
      form.append(this.buildReferencePicker());
    } else {
      form.append(this.buildKeywordControls());
    }
    return form;
  }

  private buildReferencePicker(): HTMLElement {
    const wrap = this.el("div", "reference-picker");
    const select = this.el("select", "reference-select") as HTMLSelectElement;
    const blank = this.el("option") as HTMLOptionElement;
    blank.value = "";
    blank.textContent = "Pick a reference image";
    select.append(blank);

    // candidates come from anything on screen: gallery results or saved panel
    const seen = new Set<string>();
    const addOption = (imageId: string, text: string) => {
      if (imageId === this.panel.sourceImageId || seen.has(imageId)) return;
      seen.add(imageId);
      const option = this.el("option") as HTMLOptionElement;
      option.value = imageId;
      option.textContent = text;
      select.append(option);
    };
    for (const section of this.gallery.sections) {
      for (const item of section.items) {
        addOption(item.image_id, `${item.image_id}: ${item.description}`);
      }
    }
    for (const imageId of this.saves.saved) {
      addOption(imageId, `${imageId} (saved)`);
    }
    select.value = this.panel.referenceImageId ?? "";
    select.addEventListener("change", () => {
      this.panel.referenceImageId = select.value || null;
      this.renderPanel();
    });
    wrap.append(select);
    return wrap;
  }

  private buildKeywordControls(): HTMLElement {
    const wrap = this.el("div", "keyword-controls");

    const fetchBtn = this.el("button", "keywords-button");
    fetchBtn.textContent = "Suggest keywords";
    fetchBtn.addEventListener("click", () => void this.fetchKeywords());
    wrap.append(fetchBtn);

    const chipRow = (label: string, terms: string[]): HTMLElement => {
      const row = this.el("div", "chip-row");
      const caption = this.el("span", "chip-label");
      caption.textContent = label;
      row.append(caption);
      for (const term of terms) {
        const chip = this.el("button", "keyword-chip");
        chip.textContent = term;
        if (this.picker.isPicked(term)) chip.classList.add("picked");
        chip.addEventListener("click", () => {
          this.picker.toggle(term);
          this.panel.keywords = this.picker.selected();
          this.renderPanel();
        });
        row.append(chip);
      }
      return row;
    };
    wrap.append(chipRow("aligned", this.picker.aligned));
    wrap.append(chipRow("diversified", this.picker.diversified));

    const custom = this.el("input", "custom-keyword") as HTMLInputElement;
    custom.type = "text";
    custom.placeholder = "Add a keyword";
    custom.addEventListener("keydown", (e) => {
      if (e.key !== "Enter") return;
      e.preventDefault();
      if (this.picker.addCustom(custom.value)) {
        this.panel.keywords = this.picker.selected();
        custom.value = "";
        this.renderPanel();
      }
    });
    wrap.append(custom);
    return wrap;
  }

  private async fetchKeywords(): Promise<void> {
    const imageId = this.panel.sourceImageId;
    if (!imageId) return;
    try {
      const response = await this.api.keywords(imageId);
      this.picker.load(response);
      this.panel.keywords = [];
      this.renderPanel();
      if (response.short) this.setStatus("Fewer diversified keywords than usual were available");
    } catch (err) {
      this.setStatus(this.describeError(err));
    }
  }

  private buildGenerateControls(): HTMLElement {
    const row = this.el("div", "generate-row");
    const generateBtn = this.el("button", "generate-button") as HTMLButtonElement;
    generateBtn.textContent = this.panel.isBusy ? "Generating..." : "Generate";
    generateBtn.disabled = !this.panel.canGenerate();
    generateBtn.addEventListener("click", () => void this.runGenerate());
    row.append(generateBtn);
    return row;
  }

  private buildErrorRow(): HTMLElement {
    const row = this.el("div", "gen-error");
    const message = this.el("span");
    message.textContent = this.panel.error ?? "generation failed";
    const retryBtn = this.el("button", "retry-button");
    retryBtn.textContent = "Retry";
    retryBtn.addEventListener("click", () => void this.runGenerate());
    row.append(message, retryBtn);
    return row;
  }

  private buildResultCard(): HTMLElement {
    const result = this.panel.result!;
    const card = this.el("figure", "generated-card");
    card.dataset.imageId = result.image_id;

    const img = this.el("img", "generated-image") as HTMLImageElement;
    img.src = result.uri;
    img.alt = result.description;
    const caption = this.el("figcaption");
    caption.textContent = result.description;

    const actions = this.el("div", "generated-actions");
    const regenBtn = this.el("button", "regenerate-button");
    regenBtn.textContent = "Regenerate";
    regenBtn.addEventListener("click", () => void this.runGenerate());

    const searchBtn = this.el("button", "search-result-button");
    searchBtn.textContent = "Search with this image";
    searchBtn.addEventListener("click", () => void this.runSimilar(result.image_id, "generated"));

    const saveBtn = this.el("button", "save-button");
    saveBtn.textContent = this.saves.isSaved(result.image_id) ? "Unsave" : "Save";
    saveBtn.addEventListener("click", () => void this.toggleSave(result.image_id));

    actions.append(regenBtn, searchBtn, saveBtn);
    card.append(img, caption, actions);
    return card;
  }

  private async runGenerate(): Promise<void> {
    if (!this.panel.canGenerate()) return;
    this.renderPanel();
    try {
      const pending = this.panel.generate();
      this.renderPanel();
      await pending;
    } catch {
      // surfaced through panel.error below
    }
    this.renderPanel();
  }

  private describeError(err: unknown): string {
    return err instanceof Error ? err.message : String(err);
  }
}
